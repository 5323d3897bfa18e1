"""
Constructive chains for the Certified Chain Cover Engine.

chain_for_arc builds a formal chain along a parameterized arc: the arc is
cut into n subarcs of diameter below epsilon/2, lambda is taken below
epsilon/8 and a quarter of the distance between non-neighbouring subarcs,
and each subarc is covered by balls of radius lambda/2 centered on it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, List, Optional, Sequence, Tuple

from ambient.codings import get_dimension
from ambient.types import Ball, SetCode, dist2
from formal.chains import FormalChain
from formal.distance import DistanceExpr, sqrt_lower
from formal.predicates import formally_contained
from .exact import piece_covered
from .fixtures import Fixture, FixtureError, Parameterization
from .pieces import ParamPiece, Segment, UndecidedAtCap, piece_meets_ball

logger = logging.getLogger(__name__)

Vec = Tuple[Fraction, ...]


def _orient(p: Vec, q: Vec, r: Vec) -> int:
  val = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
  return (val > 0) - (val < 0)


def _on_segment(p: Vec, q: Vec, r: Vec) -> bool:
  return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def segments_intersect(s: Segment, t: Segment) -> bool:
  """Exact planar segment intersection, touching included."""
  o1, o2 = _orient(s.p0, s.p1, t.p0), _orient(s.p0, s.p1, t.p1)
  o3, o4 = _orient(t.p0, t.p1, s.p0), _orient(t.p0, t.p1, s.p1)
  if o1 != o2 and o3 != o4:
    return True
  return (
    (o1 == 0 and _on_segment(s.p0, t.p0, s.p1))
    or (o2 == 0 and _on_segment(s.p0, t.p1, s.p1))
    or (o3 == 0 and _on_segment(t.p0, s.p0, t.p1))
    or (o4 == 0 and _on_segment(t.p0, s.p1, t.p1))
  )


def segment_distance2(s: Segment, t: Segment) -> Fraction:
  """Exact squared distance between two planar segments."""
  if segments_intersect(s, t):
    return Fraction(0)
  return min(t.dist2_to(s.p0), t.dist2_to(s.p1), s.dist2_to(t.p0), s.dist2_to(t.p1))


def _refine(pieces: Sequence[ParamPiece], size: Fraction) -> List[Tuple[Vec, Fraction]]:
  out = []
  stack = list(pieces)
  while stack:
    piece = stack.pop()
    center, radius = piece.enclosure()
    if radius <= size:
      out.append((center, radius))
    else:
      stack.extend(piece.split())
  return out


def subarc_distance_lower(
  A: Sequence[ParamPiece],
  B: Sequence[ParamPiece],
  size: Fraction,
  bits: int = 40,
) -> Fraction:
  """
  A rational lower bound of d(A, B).

  Planar segment lists are measured exactly; other pieces through
  enclosures refined to radius at most size.
  """
  if get_dimension() == 2 and all(isinstance(p, Segment) for p in list(A) + list(B)):
    d2 = min(segment_distance2(s, t) for s in A for t in B)
    return sqrt_lower(d2, bits)
  left, right = _refine(A, size), _refine(B, size)
  best: Optional[Fraction] = None
  for c1, r1 in left:
    for c2, r2 in right:
      bound = sqrt_lower(dist2(c1, c2), bits) - r1 - r2
      if best is None or bound < best:
        best = bound
  return max(best, Fraction(0))


@dataclass(frozen=True)
class CoverPredicate:
  """⟨A, j, λ⟩: A ⊆ J_j, every ball of j meets A and has radius below λ."""

  target: Tuple[ParamPiece, ...]
  link: SetCode
  lam: Fraction

  def holds(self, depth_cap: int = 48) -> bool:
    balls = self.link.decoded
    pairs = [(b.center, b.radius) for b in balls]
    if any(not b.radius < self.lam for b in balls):
      return False
    for b in balls:
      if not any(piece_meets_ball(p, b.center, b.radius, False, depth_cap) for p in self.target):
        return False
    for piece in self.target:
      center, radius = piece.enclosure()
      if not piece_covered(piece, center, radius, pairs, depth_cap):
        return False
    return True


@dataclass(frozen=True)
class ArcChain:
  """A constructive chain together with the data it was built from."""

  chain: FormalChain
  subarcs: Tuple[Tuple[ParamPiece, ...], ...]
  epsilon: Fraction
  lam: Fraction

  def predicates(self) -> List[CoverPredicate]:
    return [CoverPredicate(tuple(arc), link, self.epsilon) for arc, link in zip(self.subarcs, self.chain.links)]


def build_arc_chain(
  f: Parameterization,
  epsilon: Fraction,
  lo: Optional[Fraction] = None,
  hi: Optional[Fraction] = None,
  max_refinements: int = 12,
) -> ArcChain:
  """
  Build the constructive chain along f([lo, hi]).

  Args:
      f: Exact parameterization
      epsilon: Target formal mesh
      lo: Start parameter (default: the lower end of the domain)
      hi: End parameter (default: the upper end of the domain)
      max_refinements: Halvings allowed when separating subarcs

  Returns:
      ArcChain: The chain, its subarcs and lambda

  Raises:
      ValueError: If epsilon <= 0 or the parameter range is unbounded or empty
      UndecidedAtCap: If non-neighbouring subarcs cannot be separated
  """
  epsilon = Fraction(epsilon)
  if epsilon <= 0:
    raise ValueError(f"epsilon must be positive, got {epsilon}")
  lo = f.lower if lo is None else Fraction(lo)
  hi = f.upper if hi is None else Fraction(hi)
  if lo is None or hi is None or not lo < hi:
    raise ValueError(f"empty/invalid segment: [{lo}, {hi}]")
  L = f.lipschitz
  n = floor(2 * L * (hi - lo) / epsilon) + 1
  h = (hi - lo) / n
  subarcs = [tuple(f.subarc(lo + i * h, lo + (i + 1) * h)) for i in range(n)]
  reach = L * h / 2
  mids = [f.point(lo + (i + Fraction(1, 2)) * h) for i in range(n)]

  lam = epsilon / 8
  for p in range(n):
    for q in range(p + 2, n):
      # subarcs far apart cannot lower lambda below epsilon/8
      if DistanceExpr.between(mids[p], mids[q]).gt(2 * reach + epsilon / 2):
        continue
      size = epsilon / 64
      bound = Fraction(0)
      for _ in range(max_refinements + 1):
        bound = subarc_distance_lower(subarcs[p], subarcs[q], size)
        if bound > 0:
          break
        size /= 2
      if bound <= 0:
        raise UndecidedAtCap(f"subarcs {p} and {q} could not be separated")
      lam = min(lam, bound / 4)

  rho = lam / 2
  M = floor(L * h / rho) + 1
  dt = h / M
  links = []
  for i in range(n):
    centers = [f.point(lo + i * h + m * dt) for m in range(M + 1)]
    links.append(SetCode.from_balls(Ball(c, rho) for c in centers))
  logger.info(f"chain_for_arc: {n} links, lambda={lam}, {M + 1} balls per link")
  return ArcChain(FormalChain(tuple(links)), tuple(subarcs), epsilon, lam)


def chain_for_arc(
  f: Parameterization,
  epsilon: Fraction,
  lo: Optional[Fraction] = None,
  hi: Optional[Fraction] = None,
  max_refinements: int = 12,
) -> FormalChain:
  """
  A formal chain along f([lo, hi]) with every link of formal diameter below
  epsilon, each link covering its subarc with balls that meet it.

  See build_arc_chain for arguments and errors.
  """
  return build_arc_chain(f, epsilon, lo, hi, max_refinements).chain


def contained_span(chain: FormalChain, a: Sequence[Fraction], m: Fraction, e: int) -> Optional[Tuple[int, int]]:
  """
  The largest (p, q) with p <= e <= q and links p..q all formally
  contained in B(a, m); None when link e itself is not.
  """
  if not formally_contained(chain[e], a, m):
    return None
  p = e
  while p > 0 and formally_contained(chain[p - 1], a, m):
    p -= 1
  q = e
  while q < chain.last and formally_contained(chain[q + 1], a, m):
    q += 1
  return p, q


def cover_enumerator(fx: Fixture) -> Callable[[int], SetCode]:
  """
  k -> a code covering a compact fixture by balls of radius 2^-k centered
  on it; the formal mesh tends to 0 as k grows.

  Raises:
      FixtureError: If the fixture is not compact
  """
  if fx.kind == "point-set":
    points = [p.p for p in fx.curve]

    def cover_points(k: int) -> SetCode:
      rho = Fraction(1, 2 ** k)
      return SetCode.from_balls(Ball(p, rho) for p in points)

    return cover_points
  f = fx.param
  if f is None or f.lower is None or f.upper is None or fx.noise:
    raise FixtureError(f"fixture {fx.id} is not a compact curve")

  def cover_curve(k: int) -> SetCode:
    rho = Fraction(1, 2 ** k)
    steps = floor(f.lipschitz * (f.upper - f.lower) / rho) + 1
    dt = (f.upper - f.lower) / steps
    return SetCode.from_balls(Ball(f.point(f.lower + m * dt), rho) for m in range(steps + 1))

  return cover_curve
