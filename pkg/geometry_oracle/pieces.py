"""
Geometric pieces for the Certified Chain Cover Engine.

A fixture set is a finite union of pieces: points, segments, rays, closed
noise disks, arcs of a rational circle chart and pieces of the rational
spiral. Points, segments, rays and disks answer every ball and box query
exactly. Arcs answer ball queries exactly through their chart quadratic.
Arcs and spirals answer box queries through Lipschitz enclosures that are
refined on demand.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ambient.types import dist2, dot, norm1, vadd, vscale, vsub
from formal.distance import DistanceExpr
from presentations.subdivision import Box, box_min_dist2
from .surds import Interval, QuadraticSurd, quadratic_solutions

logger = logging.getLogger(__name__)

Vec = Tuple[Fraction, ...]


def _vec(x: Sequence) -> Vec:
  return tuple(Fraction(c) for c in x)


class Piece(ABC):
  """One closed piece of a fixture set."""

  #: True when meets_box is exact and the piece is never split
  exact: bool = True

  @abstractmethod
  def meets_ball(self, center: Sequence[Fraction], radius: Fraction, closed: bool) -> Optional[bool]:
    """Exact intersection with B(center, radius), closed or open; None if undecidable here."""

  @abstractmethod
  def meets_box(self, box: Box) -> Optional[bool]:
    """Exact intersection with a closed box; None if undecidable here."""

  def enclosure(self) -> Tuple[Vec, Fraction]:
    """A closed ball containing the piece."""
    raise NotImplementedError(f"{type(self).__name__} has no bounded enclosure")

  def sample(self) -> Vec:
    """Some rational point of the piece."""
    raise NotImplementedError


class ParamPiece(Piece):
  """A piece with an exact rational parameterization on [t0, t1] (or [t0, ∞))."""

  t0: Fraction
  t1: Optional[Fraction]

  @abstractmethod
  def point(self, t: Fraction) -> Vec:
    """The rational point at parameter t."""

  @property
  @abstractmethod
  def lipschitz(self) -> Fraction:
    """Rational Lipschitz bound of the parameterization."""

  @abstractmethod
  def subpiece(self, a: Fraction, b: Fraction) -> "ParamPiece":
    """The piece restricted to parameters [a, b]."""

  def split(self) -> Tuple["ParamPiece", "ParamPiece"]:
    mid = (self.t0 + self.t1) / 2
    return self.subpiece(self.t0, mid), self.subpiece(mid, self.t1)

  def enclosure(self) -> Tuple[Vec, Fraction]:
    if self.t1 is None:
      raise NotImplementedError("unbounded piece has no enclosure")
    mid = (self.t0 + self.t1) / 2
    return self.point(mid), self.lipschitz * (self.t1 - self.t0) / 2

  def sample(self) -> Vec:
    return self.point(self.t0)

  def quadratic(self, center: Sequence[Fraction], radius: Fraction) -> Optional[Tuple[Fraction, Fraction, Fraction]]:
    """
    Coefficients (alpha, beta, gamma) with point(t) in the open ball iff
    alpha t^2 + 2 beta t + gamma < 0, when such a form exists.
    """
    return None

  def ball_intervals(self, center: Sequence[Fraction], radius: Fraction, closed: bool) -> Optional[List[Interval]]:
    """Parameter set of the piece inside the ball, as surd intervals."""
    coeffs = self.quadratic(center, radius)
    if coeffs is None:
      return None
    alpha, beta, gamma = coeffs
    return quadratic_solutions(alpha, beta, gamma, not closed, self.t0, self.t1)

  def meets_ball(self, center: Sequence[Fraction], radius: Fraction, closed: bool) -> Optional[bool]:
    intervals = self.ball_intervals(center, radius, closed)
    if intervals is None:
      return None
    if closed:
      return bool(intervals)
    lo = QuadraticSurd.rational(self.t0)
    hi = None if self.t1 is None else QuadraticSurd.rational(self.t1)
    return any(lo < right and (hi is None or left < hi) for left, right in intervals)

  def meets_box(self, box: Box) -> Optional[bool]:
    return None


@dataclass(frozen=True)
class PointPiece(Piece):
  """A single rational point."""

  p: Vec

  def __post_init__(self):
    object.__setattr__(self, "p", _vec(self.p))

  def meets_ball(self, center, radius, closed):
    d2, r2 = dist2(self.p, center), Fraction(radius) ** 2
    return d2 <= r2 if closed else d2 < r2

  def meets_box(self, box):
    lo, hi = box
    return all(l <= c <= h for l, h, c in zip(lo, hi, self.p))

  def enclosure(self):
    return self.p, Fraction(0)

  def sample(self):
    return self.p


@dataclass(frozen=True)
class Disk(Piece):
  """A closed rational ball, used for the noise set F."""

  center: Vec
  radius: Fraction

  def __post_init__(self):
    object.__setattr__(self, "center", _vec(self.center))
    object.__setattr__(self, "radius", Fraction(self.radius))
    if self.radius <= 0:
      raise ValueError(f"nonpositive radius: {self.radius}")

  def meets_ball(self, center, radius, closed):
    expr = DistanceExpr.between(self.center, center)
    bound = self.radius + Fraction(radius)
    return expr.le(bound) if closed else expr.lt(bound)

  def meets_box(self, box):
    return box_min_dist2(box, self.center) <= self.radius * self.radius

  def enclosure(self):
    return self.center, self.radius

  def sample(self):
    return self.center


def _clip_line(p0: Vec, v: Vec, box: Box, t_lo: Fraction, t_hi: Optional[Fraction]) -> bool:
  """Liang-Barsky: does p0 + t v, t in [t_lo, t_hi], meet the closed box."""
  lo, hi = box
  tmin, tmax = t_lo, t_hi
  for d in range(len(p0)):
    if v[d] == 0:
      if p0[d] < lo[d] or p0[d] > hi[d]:
        return False
      continue
    a = (lo[d] - p0[d]) / v[d]
    b = (hi[d] - p0[d]) / v[d]
    if a > b:
      a, b = b, a
    tmin = max(tmin, a)
    tmax = b if tmax is None else min(tmax, b)
    if tmax < tmin:
      return False
  return True


@dataclass(frozen=True)
class Segment(ParamPiece):
  """The closed segment p0 + t (p1 - p0), t in [0, 1]."""

  p0: Vec
  p1: Vec

  def __post_init__(self):
    object.__setattr__(self, "p0", _vec(self.p0))
    object.__setattr__(self, "p1", _vec(self.p1))

  t0 = Fraction(0)
  t1 = Fraction(1)

  @property
  def direction(self) -> Vec:
    return vsub(self.p1, self.p0)

  def point(self, t):
    return vadd(self.p0, vscale(Fraction(t), self.direction))

  @property
  def lipschitz(self):
    return norm1(self.direction)

  def subpiece(self, a, b):
    return Segment(self.point(a), self.point(b))

  def quadratic(self, center, radius):
    v = self.direction
    w = vsub(self.p0, center)
    return dot(v, v), dot(v, w), dot(w, w) - Fraction(radius) ** 2

  def meets_ball(self, center, radius, closed):
    d2 = self.dist2_to(center)
    r2 = Fraction(radius) ** 2
    return d2 <= r2 if closed else d2 < r2

  def meets_box(self, box):
    return _clip_line(self.p0, self.direction, box, Fraction(0), Fraction(1))

  def enclosure(self):
    mid = vscale(Fraction(1, 2), vadd(self.p0, self.p1))
    return mid, norm1(self.direction) / 2

  def dist2_to(self, x: Sequence[Fraction]) -> Fraction:
    """Exact squared distance from x to the segment."""
    v = self.direction
    vv = dot(v, v)
    if vv == 0:
      return dist2(self.p0, x)
    t = dot(vsub(x, self.p0), v) / vv
    t = min(max(t, Fraction(0)), Fraction(1))
    return dist2(self.point(t), x)


@dataclass(frozen=True)
class RayPiece(ParamPiece):
  """The closed ray p0 + t d, t >= 0."""

  p0: Vec
  d: Vec

  def __post_init__(self):
    object.__setattr__(self, "p0", _vec(self.p0))
    object.__setattr__(self, "d", _vec(self.d))
    if all(c == 0 for c in self.d):
      raise ValueError("ray direction must be nonzero")

  t0 = Fraction(0)
  t1 = None

  def point(self, t):
    return vadd(self.p0, vscale(Fraction(t), self.d))

  @property
  def lipschitz(self):
    return norm1(self.d)

  def subpiece(self, a, b):
    return Segment(self.point(a), self.point(b))

  def split(self):
    raise NotImplementedError("rays are never split")

  def quadratic(self, center, radius):
    w = vsub(self.p0, center)
    return dot(self.d, self.d), dot(self.d, w), dot(w, w) - Fraction(radius) ** 2

  def meets_ball(self, center, radius, closed):
    d2 = self.dist2_to(center)
    r2 = Fraction(radius) ** 2
    return d2 <= r2 if closed else d2 < r2

  def meets_box(self, box):
    return _clip_line(self.p0, self.d, box, Fraction(0), None)

  def dist2_to(self, x: Sequence[Fraction]) -> Fraction:
    t = max(dot(vsub(x, self.p0), self.d) / dot(self.d, self.d), Fraction(0))
    return dist2(self.point(t), x)


def chart_point(center: Vec, radius: Fraction, sx: int, u: Fraction) -> Vec:
  """c + R (sx (1 - u^2)/(1 + u^2), 2u/(1 + u^2)); sx = -1 mirrors the chart."""
  u = Fraction(u)
  den = 1 + u * u
  return (center[0] + radius * sx * (1 - u * u) / den, center[1] + radius * 2 * u / den)


@dataclass(frozen=True)
class ArcPiece(ParamPiece):
  """
  An arc of the circle (center, radius) in a rational half-angle chart,
  u in [t0, t1] within [-1, 1]. Chart sx = 1 covers the right half circle,
  sx = -1 the left half.
  """

  center: Vec
  radius: Fraction
  sx: int
  t0: Fraction
  t1: Fraction

  def __post_init__(self):
    object.__setattr__(self, "center", _vec(self.center))
    object.__setattr__(self, "radius", Fraction(self.radius))
    lo, hi = sorted((Fraction(self.t0), Fraction(self.t1)))
    object.__setattr__(self, "t0", lo)
    object.__setattr__(self, "t1", hi)

  exact = False

  def point(self, t):
    return chart_point(self.center, self.radius, self.sx, t)

  @property
  def lipschitz(self):
    return 2 * self.radius

  def subpiece(self, a, b):
    return ArcPiece(self.center, self.radius, self.sx, a, b)

  def quadratic(self, center, radius):
    wx = self.center[0] - Fraction(center[0])
    wy = self.center[1] - Fraction(center[1])
    R = self.radius
    K = R * R + wx * wx + wy * wy - Fraction(radius) ** 2
    return K - 2 * R * self.sx * wx, 2 * R * wy, K + 2 * R * self.sx * wx


#: Lipschitz factor of t -> t (1 - t^2, 2t)/(1 + t^2) on [0, 1]
SPIRAL_LIPSCHITZ = Fraction(3, 2)


def spiral_point(center: Vec, scale: Fraction, t: Fraction) -> Vec:
  """c + s t ((1 - t^2)/(1 + t^2), 2t/(1 + t^2))."""
  t = Fraction(t)
  den = 1 + t * t
  return (center[0] + scale * t * (1 - t * t) / den, center[1] + scale * t * 2 * t / den)


@dataclass(frozen=True)
class SpiralPiece(ParamPiece):
  """A piece of the rational quarter spiral, t in [t0, t1] within [0, 1]."""

  center: Vec
  scale: Fraction
  t0: Fraction
  t1: Fraction

  def __post_init__(self):
    object.__setattr__(self, "center", _vec(self.center))
    object.__setattr__(self, "scale", Fraction(self.scale))
    lo, hi = sorted((Fraction(self.t0), Fraction(self.t1)))
    if lo < 0 or hi > 1:
      raise ValueError(f"spiral parameters must lie in [0, 1], got [{lo}, {hi}]")
    object.__setattr__(self, "t0", lo)
    object.__setattr__(self, "t1", hi)

  exact = False

  def point(self, t):
    return spiral_point(self.center, self.scale, t)

  @property
  def lipschitz(self):
    return SPIRAL_LIPSCHITZ * self.scale

  def subpiece(self, a, b):
    return SpiralPiece(self.center, self.scale, a, b)

  def meets_ball(self, center, radius, closed):
    return None


class UndecidedAtCap(RuntimeError):
  """An enclosure refinement reached its depth cap without a verdict."""


def piece_meets_ball(piece: Piece, center: Sequence[Fraction], radius: Fraction, closed: bool, depth_cap: int) -> bool:
  """
  Decide whether the piece meets the ball, refining enclosures when the
  piece has no exact test.

  A refined part is discarded when its enclosure misses the ball, and the
  search stops with True as soon as a rational point of a part lies in the
  ball.

  Raises:
      UndecidedAtCap: If a part still straddles the ball boundary at depth_cap
  """
  verdict = piece.meets_ball(center, radius, closed)
  if verdict is not None:
    return verdict
  radius = Fraction(radius)
  r2 = radius * radius
  stack = [(piece, 0)]
  while stack:
    part, depth = stack.pop()
    ec, er = part.enclosure()
    expr = DistanceExpr.between(ec, center)
    if expr.gt(er + radius) if closed else expr.ge(er + radius):
      continue
    for t in (part.t0, (part.t0 + part.t1) / 2, part.t1):
      d2 = dist2(part.point(t), center)
      if d2 < r2 or (closed and d2 == r2):
        return True
    if depth >= depth_cap:
      raise UndecidedAtCap(f"{type(piece).__name__} undecided against ball at depth {depth}")
    stack.extend((child, depth + 1) for child in part.split())
  return False
