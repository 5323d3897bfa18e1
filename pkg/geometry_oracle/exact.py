"""
Exact ground-truth decisions for the Certified Chain Cover Engine.

These routines decide intersection and coverage questions on fixtures
with rational arithmetic and quadratic surds only. Spiral pieces are
decided by refinement with rational witnesses and report UndecidedAtCap
instead of guessing.
"""

import logging
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from ambient.types import Ball, dist2
from formal.distance import DistanceExpr
from presentations.subdivision import box_around, box_inside_ball, box_min_dist2, split_box
from .fixtures import Fixture
from .pieces import Disk, ParamPiece, Piece, PointPiece, UndecidedAtCap, piece_meets_ball
from .surds import closed_covered_by_open

logger = logging.getLogger(__name__)

BallSpec = Tuple[Sequence[Fraction], Fraction]

DEFAULT_DEPTH_CAP = 48

#: Refinement cap when deciding whether one spiral piece meets a ball
DEFAULT_SPIRAL_DEPTH_CAP = 40


def _as_pairs(balls: Iterable) -> List[Tuple[Tuple[Fraction, ...], Fraction]]:
  out = []
  for b in balls:
    if isinstance(b, Ball):
      out.append((b.center, b.radius))
    else:
      center, radius = b
      out.append((tuple(Fraction(c) for c in center), Fraction(radius)))
  return out


def exact_intersects(
  fx: Fixture,
  ball: BallSpec,
  closed: bool = False,
  include_noise: bool = False,
  depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
) -> bool:
  """
  Decide whether the fixture curve (and optionally F) meets a ball.

  Args:
      fx: The fixture
      ball: (center, radius) of the ball
      closed: Closed ball when True, open ball otherwise
      include_noise: Count the noise disks as part of the set
      depth_cap: Refinement cap for spiral pieces

  Returns:
      bool: True iff the set meets the ball

  Raises:
      UndecidedAtCap: If a spiral piece stays undecided at the cap
  """
  center, radius = _as_pairs([ball])[0]
  return any(piece_meets_ball(p, center, radius, closed, depth_cap) for p in fx.pieces(include_noise))


def _strictly_inside_some(center: Sequence[Fraction], radius: Fraction, balls) -> bool:
  return any(DistanceExpr.between(center, bc, radius).lt(br) for bc, br in balls)


def _point_covered(x: Sequence[Fraction], balls) -> bool:
  return any(dist2(x, bc) < br * br for bc, br in balls)


def _interval_cover(piece: ParamPiece, a: Sequence[Fraction], n: Fraction, balls) -> bool:
  targets = piece.ball_intervals(a, n, closed=True)
  if not targets:
    return True
  opens = []
  for bc, br in balls:
    opens.extend(piece.ball_intervals(bc, br, closed=False))
  return all(closed_covered_by_open(target, opens) for target in targets)


def _refined_cover(piece: ParamPiece, a: Sequence[Fraction], n: Fraction, balls, depth_cap: int) -> bool:
  stack = [(piece, 0)]
  while stack:
    part, depth = stack.pop()
    ec, er = part.enclosure()
    if DistanceExpr.between(ec, a).gt(er + n):
      continue
    if _strictly_inside_some(ec, er, balls):
      continue
    for t in (part.t0, (part.t0 + part.t1) / 2, part.t1):
      x = part.point(t)
      if dist2(x, a) <= n * n and not _point_covered(x, balls):
        logger.debug(f"Uncovered witness point {x}")
        return False
    if depth >= depth_cap:
      raise UndecidedAtCap(f"cover check undecided at depth {depth}")
    stack.extend((child, depth + 1) for child in part.split())
  return True


def _disk_cover(disk: Disk, a: Sequence[Fraction], n: Fraction, balls, depth_cap: int) -> bool:
  grid = [Ball(bc, br) for bc, br in balls]
  stack = [(box_around(disk.center, disk.radius), 0)]
  while stack:
    box, depth = stack.pop()
    if box_min_dist2(box, disk.center) > disk.radius ** 2 or box_min_dist2(box, a) > n * n:
      continue
    if any(box_inside_ball(box, b) for b in grid):
      continue
    mid = tuple((l + h) / 2 for l, h in zip(*box))
    if dist2(mid, disk.center) <= disk.radius ** 2 and dist2(mid, a) <= n * n and not _point_covered(mid, balls):
      return False
    if depth >= depth_cap:
      raise UndecidedAtCap(f"noise cover check undecided at depth {depth}")
    stack.extend((child, depth + 1) for child in split_box(box))
  return True


def piece_covered(piece: Piece, a: Sequence[Fraction], n: Fraction, balls, depth_cap: int = DEFAULT_DEPTH_CAP) -> bool:
  """Decide piece ∩ B̂(a, n) ⊆ union of the open balls."""
  if isinstance(piece, PointPiece):
    return dist2(piece.p, a) > n * n or _point_covered(piece.p, balls)
  if isinstance(piece, Disk):
    return _disk_cover(piece, a, n, balls, depth_cap)
  if piece.quadratic(a, n) is not None:
    return _interval_cover(piece, a, n, balls)
  return _refined_cover(piece, a, n, balls, depth_cap)


def exact_cover_check(
  fx: Fixture,
  a: Sequence[Fraction],
  n: Fraction,
  balls: Iterable,
  include_noise: bool = False,
  depth_cap: int = DEFAULT_DEPTH_CAP,
) -> bool:
  """
  Decide fixture ∩ B̂(a, n) ⊆ union of the given open balls.

  Segments, rays and circle arcs are handled by exact interval bookkeeping
  in their parameter; spirals and noise disks by refinement.

  Args:
      fx: The fixture
      a: Anchor point
      n: Anchor radius (0 means the point a)
      balls: Balls, as Ball values or (center, radius) pairs
      include_noise: Include the noise disks in the checked set
      depth_cap: Refinement cap

  Returns:
      bool: True iff the covered region is inside the union

  Raises:
      UndecidedAtCap: If a refined piece stays undecided at the cap
  """
  pairs = _as_pairs(balls)
  a = tuple(Fraction(c) for c in a)
  n = Fraction(n)
  return all(piece_covered(p, a, n, pairs, depth_cap) for p in fx.pieces(include_noise))


def union_diameter_lt(balls: Iterable, t: Fraction) -> bool:
  """
  diam of a finite union of open balls < t, decided exactly.

  The bound checked is the largest of 2r_i and d(c_i, c_j) + r_i + r_j,
  which equals the diameter unless one ball contains another.
  """
  pairs = _as_pairs(balls)
  t = Fraction(t)
  for idx, (c1, r1) in enumerate(pairs):
    if not 2 * r1 < t:
      return False
    for c2, r2 in pairs[idx + 1:]:
      if not DistanceExpr.between(c1, c2, r1 + r2).lt(t):
        return False
  return True
