"""
Formal predicates for the Certified Chain Cover Engine.

Formal diameter, formal disjointness and formal containment are strict
inequalities on the codes alone. In R^n they are decidable exactly, so no
predicate here consults fuel.
"""

import bisect
import logging
from fractions import Fraction
from typing import List, Sequence, Union

from ambient.types import Ball, SetCode, dist2
from .distance import DistanceExpr, sqrt_upper

logger = logging.getLogger(__name__)

BallLike = Union[int, Ball, SetCode, Sequence[Ball]]


def as_balls(x: BallLike) -> List[Ball]:
  """Normalize a ball index, a Ball, a SetCode or a list of balls."""
  if isinstance(x, Ball):
    return [x]
  if isinstance(x, SetCode):
    return x.decoded
  if isinstance(x, int):
    return [Ball.from_index(x)]
  return [b if isinstance(b, Ball) else Ball.from_index(b) for b in x]


def fdiam_lt(j: BallLike, t: Fraction) -> bool:
  """
  Decide fdiam(j) < t exactly.

  fdiam(j) is the largest center distance over pairs of members plus twice
  the largest member radius.

  Args:
      j: Set code (or ball, or list of balls)
      t: Rational bound

  Returns:
      bool: True iff fdiam(j) < t
  """
  balls = as_balls(j)
  t = Fraction(t)
  offset = 2 * max(b.radius for b in balls)
  if offset >= t:
    return False
  for idx, u in enumerate(balls):
    for v in balls[idx + 1:]:
      if not DistanceExpr.between(u.center, v.center, offset).lt(t):
        return False
  return True


def fdiam_upper(j: BallLike, bits: int = 32) -> Fraction:
  """Outward-rounded rational upper bound of fdiam(j) within 2^-bits."""
  balls = as_balls(j)
  largest = max(
    (dist2(u.center, v.center) for idx, u in enumerate(balls) for v in balls[idx + 1:]),
    default=Fraction(0),
  )
  return sqrt_upper(largest, bits) + 2 * max(b.radius for b in balls)


def balls_formally_disjoint(u: Ball, v: Ball) -> bool:
  """d(center_u, center_v) > radius_u + radius_v."""
  return DistanceExpr.between(u.center, v.center).gt(u.radius + v.radius)


def formally_disjoint(u: BallLike, v: BallLike) -> bool:
  """
  Formal disjointness of two balls, codes or ball lists.

  All member pairs must be formally disjoint. Pairs whose first
  coordinates are already separated by more than the sum of radii are
  skipped after sorting.
  """
  left = as_balls(u)
  right = sorted(as_balls(v), key=lambda b: b.center[0])
  if not left or not right:
    return True
  keys = [b.center[0] for b in right]
  rmax = max(b.radius for b in right)
  for b in left:
    reach = b.radius + rmax
    lo = bisect.bisect_left(keys, b.center[0] - reach)
    hi = bisect.bisect_right(keys, b.center[0] + reach)
    for other in right[lo:hi]:
      if not balls_formally_disjoint(b, other):
        return False
  return True


def formally_contained(j: BallLike, a: Sequence[Fraction], m: Fraction) -> bool:
  """
  J_j formally contained in B(a, m): d(center, a) + radius < m for every member.

  Raises:
      ValueError: If m <= 0
  """
  m = Fraction(m)
  if m <= 0:
    raise ValueError(f"nonpositive radius: {m}")
  return all(DistanceExpr.between(b.center, a, b.radius).lt(m) for b in as_balls(j))


def code_formally_contained_in_ball(j: BallLike, i: Union[int, Ball]) -> bool:
  """J_j formally contained in I_i."""
  ball = i if isinstance(i, Ball) else Ball.from_index(i)
  return formally_contained(j, ball.center, ball.radius)


def code_inside_code(j: SetCode, outer: SetCode) -> bool:
  """Every member of j is a member of outer or formally contained in one."""
  members = outer.members
  outer_balls = outer.decoded
  for idx, ball in zip(sorted(j.members), j.decoded):
    if idx in members:
      continue
    if not any(formally_contained(ball, o.center, o.radius) for o in outer_balls):
      return False
  return True


def refinement_epsilon(m: Union[int, Ball], x: Sequence[Fraction], bits: int = 40) -> Fraction:
  """
  A rational epsilon for the ball-refinement property.

  For x strictly inside I_m, any j with x in J_j and fdiam(j) < epsilon is
  formally contained in I_m. Returns (radius - d(center, x)) / 2 with the
  distance rounded up, so the value is rational and never too large.

  Raises:
      ValueError: If x is not strictly inside I_m
  """
  ball = m if isinstance(m, Ball) else Ball.from_index(m)
  if not ball.contains(x):
    raise ValueError("point is not strictly inside the ball")
  d2 = dist2(ball.center, x)
  bound = sqrt_upper(d2, bits)
  while bound >= ball.radius:
    bits += 16
    bound = sqrt_upper(d2, bits)
  return (ball.radius - bound) / 2
