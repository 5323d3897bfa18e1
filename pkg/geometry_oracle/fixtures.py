"""
Fixture geometry for the Certified Chain Cover Engine.

This module loads, validates and serializes the JSON fixture files: rays,
lines and arcs given by rational polylines, rational circles, the rational
quarter spiral, finite point sets and unions of these, each with an
optional closed noise set F and, for lines, the anchor hint.
"""

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ambient.codings import get_dimension
from ambient.types import Ball, Point, dist2, format_rational, parse_rational, vsub
from formal.distance import DistanceExpr
from .pieces import (
  ArcPiece,
  Disk,
  ParamPiece,
  Piece,
  PointPiece,
  RayPiece,
  Segment,
  SpiralPiece,
  UndecidedAtCap,
  piece_meets_ball,
)

logger = logging.getLogger(__name__)

KINDS = ("polyline-ray", "polyline-line", "polyline-arc", "circle", "spiral-segment", "point-set", "union")
PLANAR_KINDS = ("circle", "spiral-segment")
VALIDATION_DEPTH = 40


class FixtureError(ValueError):
  """Malformed fixture data, a noise set meeting the curve, or an invalid hint."""


@dataclass(frozen=True)
class Parameterization:
  """
  An exact parameterization s -> f(s) of a curve.

  Unit s-intervals [start + m, start + m + 1] map affinely onto the local
  parameter range (lo, hi) of spans[m]. Below start the head ray continues
  the curve, beyond the last span the tail ray does.
  """

  spans: Tuple[Tuple[ParamPiece, Fraction, Fraction], ...]
  start: Fraction = Fraction(0)
  head: Optional[RayPiece] = None
  tail: Optional[RayPiece] = None

  @property
  def end(self) -> Fraction:
    return self.start + len(self.spans)

  @property
  def lower(self) -> Optional[Fraction]:
    return None if self.head is not None else self.start

  @property
  def upper(self) -> Optional[Fraction]:
    return None if self.tail is not None else self.end

  @property
  def lipschitz(self) -> Fraction:
    """Rational Lipschitz bound in the global parameter."""
    bounds = [piece.lipschitz * abs(hi - lo) for piece, lo, hi in self.spans]
    bounds.extend(ray.lipschitz for ray in (self.head, self.tail) if ray is not None)
    return max(bounds)

  def _local(self, m: int, s: Fraction) -> Fraction:
    piece, lo, hi = self.spans[m]
    return lo + (s - self.start - m) * (hi - lo)

  def _check(self, s: Fraction) -> None:
    if (self.lower is not None and s < self.lower) or (self.upper is not None and s > self.upper):
      raise ValueError(f"parameter {s} outside [{self.lower}, {self.upper}]")

  def point(self, s: Fraction) -> Tuple[Fraction, ...]:
    s = Fraction(s)
    self._check(s)
    if s < self.start:
      return self.head.point(self.start - s)
    if s > self.end or (not self.spans and self.tail is not None):
      return self.tail.point(s - self.end)
    m = min(int(s - self.start), len(self.spans) - 1)
    return self.spans[m][0].point(self._local(m, s))

  def subarc(self, a: Fraction, b: Fraction) -> List[ParamPiece]:
    """Bounded pieces whose union is f([a, b])."""
    a, b = Fraction(a), Fraction(b)
    if b < a:
      raise ValueError(f"empty/invalid segment: [{a}, {b}]")
    self._check(a)
    self._check(b)
    out: List[ParamPiece] = []
    if a < self.start:
      out.append(self.head.subpiece(self.start - min(b, self.start), self.start - a))
    for m, (piece, lo, hi) in enumerate(self.spans):
      u0, u1 = self.start + m, self.start + m + 1
      left, right = max(a, u0), min(b, u1)
      if left < right:
        out.append(piece.subpiece(self._local(m, left), self._local(m, right)))
    if b > self.end:
      out.append(self.tail.subpiece(max(a, self.end) - self.end, b - self.end))
    if not out:
      out.append(Segment(self.point(a), self.point(b)))
    return out

  def half(self, positive: bool) -> List[Piece]:
    """f([0, ∞)) for positive, f((-∞, 0]) otherwise; needs the matching ray."""
    zero = self.point(Fraction(0))
    if positive:
      pieces: List[Piece] = []
      if self.end > 0:
        pieces.extend(self.subarc(Fraction(0), self.end))
        pieces.append(self.tail)
      else:
        pieces.append(RayPiece(zero, self.tail.d))
      return pieces
    pieces = []
    if self.start < 0:
      pieces.append(self.head)
      pieces.extend(self.subarc(self.start, Fraction(0)))
    else:
      pieces.append(RayPiece(zero, self.head.d))
    return pieces


@dataclass(frozen=True)
class LineAnchorHint:
  """Anchor data for a line: a, the balls A, B, C, k0 and delta."""

  a: Point
  A: int
  B: int
  C: int
  k0: int
  delta: Fraction

  @property
  def ball_a(self) -> Ball:
    return Ball.from_index(self.A)

  @property
  def ball_b(self) -> Ball:
    return Ball.from_index(self.B)

  @property
  def ball_c(self) -> Ball:
    return Ball.from_index(self.C)

  @property
  def margin(self) -> Fraction:
    """2^-k0"""
    return Fraction(1, 2 ** self.k0)


def _rational(value: Any, where: str) -> Fraction:
  if not isinstance(value, str):
    raise FixtureError(f"{where}: expected an exact rational string 'p/q', got {value!r}")
  try:
    return parse_rational(value)
  except ValueError as e:
    raise FixtureError(f"{where}: {e}")


def _point(value: Any, where: str) -> Tuple[Fraction, ...]:
  if not isinstance(value, list) or len(value) != get_dimension():
    raise FixtureError(f"{where}: expected {get_dimension()} coordinates, got {value!r}")
  return tuple(_rational(c, where) for c in value)


def _ball(value: Any, where: str) -> Ball:
  if not isinstance(value, dict) or "center" not in value or "radius" not in value:
    raise FixtureError(f"{where}: expected {{center, radius}}, got {value!r}")
  radius = _rational(value["radius"], where)
  if radius <= 0:
    raise FixtureError(f"{where}: nonpositive radius: {radius}")
  return Ball(_point(value["center"], where), radius)


@dataclass(frozen=True)
class Fixture:
  """An immutable fixture: curve pieces, noise disks and optional anchor data."""

  id: str
  kind: str
  curve: Tuple[Piece, ...]
  noise: Tuple[Disk, ...] = ()
  param: Optional[Parameterization] = None
  hint: Optional[LineAnchorHint] = None
  boundary_points: Tuple[Tuple[Fraction, ...], ...] = ()
  circles: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...] = ()
  raw: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

  @property
  def mode(self) -> Optional[str]:
    """'ray' or 'line' when the curve is a topological ray or line."""
    if self.kind == "polyline-ray" or (self.kind == "spiral-segment" and self.param.tail is not None):
      return "ray"
    if self.kind == "polyline-line":
      return "line"
    return None

  def pieces(self, include_noise: bool = True) -> List[Piece]:
    out = list(self.curve)
    if include_noise:
      out.extend(self.noise)
    return out

  def endpoint(self) -> Point:
    """The endpoint f(0) of a ray fixture."""
    if self.mode != "ray":
      raise FixtureError(f"fixture {self.id} of kind {self.kind} has no ray endpoint")
    return Point(self.param.point(Fraction(0)))

  def boundary(self) -> "Fixture":
    """The manifold boundary as a point-set fixture (possibly empty)."""
    points = tuple(PointPiece(p) for p in self.boundary_points)
    return Fixture(
      id=f"{self.id}-boundary",
      kind="point-set",
      curve=points,
      boundary_points=self.boundary_points,
      raw={"id": f"{self.id}-boundary", "kind": "point-set",
           "points": [[format_rational(c) for c in p] for p in self.boundary_points]},
    )

  def to_dict(self) -> Dict[str, Any]:
    return dict(self.raw)


def _polyline_segments(vertices: Sequence[Tuple[Fraction, ...]]) -> List[Segment]:
  return [Segment(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1)]


def _build_curve(data: Dict[str, Any], where: str) -> Tuple[Tuple[Piece, ...], Optional[Parameterization], tuple, tuple]:
  """Pieces, parameterization, boundary points and exact circles of one kind."""
  kind = data.get("kind")
  if kind not in KINDS:
    raise FixtureError(f"{where}: unknown kind {kind!r}")
  if kind in PLANAR_KINDS and get_dimension() != 2:
    raise FixtureError(f"{where}: {kind} fixtures need dimension 2")

  if kind.startswith("polyline"):
    raw_vertices = data.get("vertices")
    if not isinstance(raw_vertices, list) or len(raw_vertices) < 2:
      raise FixtureError(f"{where}: a polyline needs at least two vertices")
    vertices = [_point(v, f"{where}.vertices[{i}]") for i, v in enumerate(raw_vertices)]
    for i in range(len(vertices) - 1):
      if vertices[i] == vertices[i + 1]:
        raise FixtureError(f"{where}: repeated vertex {i}")
    if kind == "polyline-arc":
      segments = _polyline_segments(vertices)
      param = Parameterization(tuple((s, Fraction(0), Fraction(1)) for s in segments))
      return tuple(segments), param, (vertices[0], vertices[-1]), ()
    segments = _polyline_segments(vertices[:-1])
    tail = RayPiece(vertices[-2], vsub(vertices[-1], vertices[-2]))
    spans = tuple((s, Fraction(0), Fraction(1)) for s in segments)
    if kind == "polyline-ray":
      param = Parameterization(spans, tail=tail)
      return tuple(segments) + (tail,), param, (vertices[0],), ()
    origin = data.get("origin", 0)
    if not isinstance(origin, int) or not 0 <= origin < len(vertices):
      raise FixtureError(f"{where}: origin must be a vertex index, got {origin!r}")
    head = RayPiece(vertices[0], vsub(vertices[0], vertices[1]))
    param = Parameterization(spans, start=Fraction(-origin), head=head, tail=tail)
    return (head,) + tuple(segments) + (tail,), param, (), ()

  if kind == "circle":
    center = _point(data.get("center"), f"{where}.center")
    radius = _rational(data.get("radius"), f"{where}.radius")
    if radius <= 0:
      raise FixtureError(f"{where}: nonpositive radius: {radius}")
    right = ArcPiece(center, radius, 1, Fraction(-1), Fraction(1))
    left = ArcPiece(center, radius, -1, Fraction(-1), Fraction(1))
    param = Parameterization(((right, Fraction(-1), Fraction(1)), (left, Fraction(1), Fraction(-1))))
    return (right, left), param, (), ((center, radius),)

  if kind == "spiral-segment":
    center = _point(data.get("center"), f"{where}.center")
    scale = _rational(data.get("scale"), f"{where}.scale")
    if scale <= 0:
      raise FixtureError(f"{where}: nonpositive scale: {scale}")
    spiral = SpiralPiece(center, scale, Fraction(0), Fraction(1))
    end = spiral.point(Fraction(1))
    if data.get("tail", False):
      # f'(1) is a positive multiple of (-1, 1)
      tail = RayPiece(end, (Fraction(-1), Fraction(1)))
      param = Parameterization(((spiral, Fraction(0), Fraction(1)),), tail=tail)
      return (spiral, tail), param, (center,), ()
    param = Parameterization(((spiral, Fraction(0), Fraction(1)),))
    return (spiral,), param, (center, end), ()

  if kind == "point-set":
    raw_points = data.get("points")
    if not isinstance(raw_points, list) or not raw_points:
      raise FixtureError(f"{where}: a point-set needs at least one point")
    points = tuple(_point(p, f"{where}.points[{i}]") for i, p in enumerate(raw_points))
    return tuple(PointPiece(p) for p in points), None, points, ()

  parts = data.get("parts")
  if not isinstance(parts, list) or not parts:
    raise FixtureError(f"{where}: a union needs at least one part")
  pieces: List[Piece] = []
  boundary: List[Tuple[Fraction, ...]] = []
  circles: List[Tuple[Tuple[Fraction, ...], Fraction]] = []
  for idx, part in enumerate(parts):
    if not isinstance(part, dict) or part.get("kind") == "union":
      raise FixtureError(f"{where}.parts[{idx}]: parts must be non-union fixtures")
    part_pieces, _, part_boundary, part_circles = _build_curve(part, f"{where}.parts[{idx}]")
    pieces.extend(part_pieces)
    boundary.extend(part_boundary)
    circles.extend(part_circles)
  return tuple(pieces), None, tuple(boundary), tuple(circles)


def _validate_noise(curve: Sequence[Piece], noise: Sequence[Disk], where: str) -> None:
  for idx, disk in enumerate(noise):
    for piece in curve:
      try:
        hit = piece_meets_ball(piece, disk.center, disk.radius, True, VALIDATION_DEPTH)
      except UndecidedAtCap as e:
        raise FixtureError(f"{where}.noise[{idx}]: disjointness undecided: {e}")
      if hit:
        raise FixtureError(f"{where}.noise[{idx}]: noise ball meets the curve")


def validate_hint(hint: LineAnchorHint, param: Parameterization, noise: Sequence[Disk]) -> None:
  """
  Check the anchor conditions exactly.

  Raises:
      FixtureError: If any condition fails
  """
  margin = hint.margin
  A, B, C = hint.ball_a, hint.ball_b, hint.ball_c
  if hint.delta <= 0:
    raise FixtureError(f"hint: delta must be positive, got {hint.delta}")
  for name, ball in (("A", A), ("B", B), ("C", C)):
    if not ball.radius < margin / 4:
      raise FixtureError(f"hint: radius of {name} must be below 2^-k0/4")
  if not A.contains(param.point(-hint.delta)):
    raise FixtureError("hint: f(-delta) is not in I_A")
  if not B.contains(param.point(hint.delta)):
    raise FixtureError("hint: f(delta) is not in I_B")
  if not C.contains(param.point(Fraction(0))):
    raise FixtureError("hint: f(0) is not in I_C")
  for name, ball, positive in (("A", A, True), ("B", B, False)):
    for piece in param.half(positive):
      if piece_meets_ball(piece, ball.center, ball.radius + margin, True, VALIDATION_DEPTH):
        side = "[0, inf)" if positive else "(-inf, 0]"
        raise FixtureError(f"hint: I_{name} is within 2^-k0 of f({side})")
  for idx, disk in enumerate(noise):
    if not DistanceExpr.between(C.center, disk.center).gt(C.radius + disk.radius + margin):
      raise FixtureError(f"hint: I_C is within 2^-k0 of noise ball {idx}")
  for piece in param.subarc(-hint.delta, hint.delta):
    ends = (piece.point(piece.t0), piece.point(piece.t1))
    if not all(dist2(x, hint.a.coords) < 1 for x in ends):
      raise FixtureError("hint: f([-delta, delta]) is not inside B(a, 1)")


def _parse_hint(data: Any, where: str) -> LineAnchorHint:
  if not isinstance(data, dict):
    raise FixtureError(f"{where}: anchors must be an object")
  try:
    k0 = data["k0"]
    if not isinstance(k0, int) or k0 < 0:
      raise FixtureError(f"{where}.k0: expected a natural, got {k0!r}")
    return LineAnchorHint(
      a=Point(_point(data["a"], f"{where}.a")),
      A=_ball(data["A"], f"{where}.A").index,
      B=_ball(data["B"], f"{where}.B").index,
      C=_ball(data["C"], f"{where}.C").index,
      k0=k0,
      delta=_rational(data["delta"], f"{where}.delta"),
    )
  except KeyError as e:
    raise FixtureError(f"{where}: missing field {e}")


def fixture_from_dict(data: Dict[str, Any]) -> Fixture:
  """
  Build and validate a fixture from its JSON object.

  Raises:
      FixtureError: On malformed data, noise meeting the curve or an invalid hint
  """
  if not isinstance(data, dict):
    raise FixtureError("fixture must be a JSON object")
  fixture_id = str(data.get("id", "fixture"))
  curve, param, boundary, circles = _build_curve(data, fixture_id)
  noise_data = data.get("noise", [])
  if not isinstance(noise_data, list):
    raise FixtureError(f"{fixture_id}.noise: expected a list")
  noise = []
  for idx, item in enumerate(noise_data):
    ball = _ball(item, f"{fixture_id}.noise[{idx}]")
    noise.append(Disk(ball.center, ball.radius))
  _validate_noise(curve, noise, fixture_id)
  hint = None
  if "anchors" in data:
    if data["kind"] != "polyline-line":
      raise FixtureError(f"{fixture_id}: anchors are only meaningful for polyline-line fixtures")
    hint = _parse_hint(data["anchors"], f"{fixture_id}.anchors")
    validate_hint(hint, param, noise)
  return Fixture(
    id=fixture_id,
    kind=data["kind"],
    curve=curve,
    noise=tuple(noise),
    param=param,
    hint=hint,
    boundary_points=boundary,
    circles=circles,
    raw=data,
  )


def load_fixture(path: Union[str, Path]) -> Fixture:
  """
  Load a fixture JSON file.

  Args:
      path: Path to the fixture file

  Returns:
      Fixture: The validated fixture

  Raises:
      FileNotFoundError: If the file does not exist
      FixtureError: If the file is malformed or fails validation
  """
  path = Path(path)
  if not path.exists():
    raise FileNotFoundError(f"Fixture file not found: {path}")
  try:
    with open(path, "r", encoding="utf-8") as f:
      data = json.load(f)
  except json.JSONDecodeError as e:
    logger.error(f"Error parsing fixture {path}: {e}")
    raise FixtureError(f"malformed JSON in {path}: {e}")
  try:
    fixture = fixture_from_dict(data)
  except FixtureError as e:
    logger.error(f"Error validating fixture {path}: {e}")
    raise
  logger.info(f"Loaded fixture {fixture.id} ({fixture.kind}) from {path}")
  return fixture


def dumps_fixture(fixture: Fixture) -> str:
  """Serialize a fixture back to its JSON text."""
  return json.dumps(fixture.to_dict(), indent=2, sort_keys=True) + "\n"
