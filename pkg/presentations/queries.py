"""
Derived queries for the Certified Chain Cover Engine.

Everything here is built on top of a PresentedSet: emptiness of Î_i ∩ S,
the complement enumeration, membership of computable points in rational
open sets and the extraction of a point from a compact singleton.
"""

import itertools
import logging
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ambient.codings import get_dimension, unpair
from ambient.types import Ball, Point, SetCode
from formal.distance import DistanceExpr, sqrt_upper
from formal.predicates import balls_formally_disjoint
from .base import Answer, CompactCover, ComputablePointSeq, PresentedSet, disjoint_far_ball
from .subdivision import box_around, box_min_dist2

logger = logging.getLogger(__name__)

BallRef = Union[int, Ball]


def _ball(i: BallRef) -> Ball:
  return i if isinstance(i, Ball) else Ball.from_index(i)


def covers(S: PresentedSet, i: BallRef, j: SetCode, fuel: int) -> Answer:
  """Semi-decide Î_i ∩ S ⊆ J_j at the given fuel."""
  return S.covers(_ball(i), j, fuel)


def far_ball(i: BallRef) -> Ball:
  """
  The canonical ball formally disjoint from I_i: center shifted by
  2ρ + 1 along the first axis, radius 1/2.
  """
  return disjoint_far_ball(_ball(i))


def intersect_empty(S: PresentedSet, i: BallRef, fuel: int) -> Answer:
  """
  Semi-decide Î_i ∩ S = ∅.

  A witness is a code l with Î_i ∩ S ⊆ J_l and I_i formally disjoint from
  J_l. Only one witness is ever tried: the single far ball of i. It is a
  witness whenever the intersection is empty, so trying it alone keeps the
  search limit-complete.

  Args:
      S: Presented closed set
      i: Ball index or Ball
      fuel: Query fuel

  Returns:
      Answer: YES once emptiness is confirmed
  """
  ball = _ball(i)
  witness = far_ball(ball)
  if not balls_formally_disjoint(ball, witness):
    return Answer.UNKNOWN
  return S.covers(ball, SetCode.from_balls([witness]), fuel)


def complement_enum(S: PresentedSet) -> Iterator[int]:
  """
  Enumerate ball indices whose closed ball misses S.

  Pairs (i, fuel) are dovetailed in Cantor order; each index is emitted at
  most once, the first time its emptiness is confirmed.
  """
  emitted = set()
  for t in itertools.count():
    i, fuel = unpair(t)
    if i in emitted:
      continue
    if intersect_empty(S, i, fuel):
      emitted.add(i)
      logger.debug(f"complement_enum emits {i} at step {t}")
      yield i


def point_in_code(x: ComputablePointSeq, j: SetCode, fuel: int) -> Answer:
  """
  Semi-decide x ∈ J_j.

  Yes iff some member ball and some s <= fuel satisfy
  d(x_s, λ) + 2^-s < ρ, decided exactly.
  """
  balls = j.decoded
  for s in range(fuel + 1):
    approx = x(s)
    slack = Fraction(1, 2 ** s)
    for b in balls:
      if DistanceExpr.between(approx, b.center, slack).lt(b.radius):
        return Answer.YES
  return Answer.UNKNOWN


def _child_geometry(radius: Fraction) -> Tuple[Fraction, Fraction]:
  """
  Grid step g and child radius for one descent level. The child radius
  exceeds the half-diagonal of a g-cell and is at most half the parent
  radius.
  """
  n = get_dimension()
  half_diag = sqrt_upper(Fraction(n), 16) / 2
  step = radius / 2
  while True:
    child = step * (half_diag + Fraction(1, 8))
    if 2 * child <= radius:
      return step, child
    step /= 2


def _children(center: Sequence[Fraction], radius: Fraction) -> List[Ball]:
  """Balls around the grid cells of step g that meet the closed parent ball."""
  step, child_radius = _child_geometry(radius)
  lo, hi = box_around(center, radius)
  ranges = []
  for l, h in zip(lo, hi):
    count = int((h - l) / step)
    ranges.append([l + z * step for z in range(count)])
  out = []
  for corner in itertools.product(*ranges):
    cell = (tuple(corner), tuple(c + step for c in corner))
    if box_min_dist2(cell, center) > radius * radius:
      continue
    mid = tuple(c + step / 2 for c in corner)
    out.append(Ball(mid, child_radius))
  return out


def _initial_ball(K: CompactCover, anchor: Optional[Tuple[Sequence[Fraction], Fraction]]) -> Ball:
  if anchor is not None:
    a, n = anchor
    return Ball(tuple(a), Fraction(n) + 1)
  origin = tuple(Fraction(0) for _ in range(get_dimension()))
  for t in itertools.count():
    e, fuel = unpair(t)
    candidate = Ball(origin, Fraction(2) ** e)
    if K(SetCode.from_balls([candidate]), fuel):
      return candidate


def point_from_singleton(
  S: Union[CompactCover, PresentedSet],
  k: int,
  anchor: Optional[Tuple[Sequence[Fraction], Fraction]] = None,
) -> Point:
  """
  Recover the point of a singleton S = {x} to within 2^-k.

  The search descends through balls that provably contain S: at each level
  the grid children of the current ball are queried with fuel raised
  round-robin until one answers Yes. It stops once the current ball has
  formal diameter below 2^-k and returns its center.

  This descends through grid children instead of scanning codes for the
  first j with fdiam below 2^-k; the returned center is still within 2^-k
  of x, since x lies in the final ball and that ball has diameter below 2^-k.

  Args:
      S: A compact cover procedure for {x}, or a PresentedSet with an
          anchor (a, n) whose closed ball contains x
      k: Precision exponent
      anchor: Enclosing anchor; required when S is a PresentedSet

  Returns:
      Point: A rational point within 2^-k of x

  Raises:
      ValueError: If a PresentedSet is given without an anchor

  Note:
      The search does not terminate when S is not a singleton.
  """
  if isinstance(S, PresentedSet):
    if anchor is None:
      raise ValueError("a PresentedSet needs an enclosing anchor")
    K = S.restrict(tuple(anchor[0]), Fraction(anchor[1]))
  else:
    K = S
  current = _initial_ball(K, anchor)
  target = Fraction(1, 2 ** k)
  level = 0
  while 2 * current.radius >= target:
    children = _children(current.center, current.radius)
    chosen = None
    for fuel in itertools.count():
      for child in children:
        if K(SetCode.from_balls([child]), fuel):
          chosen = child
          break
      if chosen is not None:
        break
    current = chosen
    level += 1
    logger.debug(f"point_from_singleton level {level}: radius {current.radius}")
  return Point(current.center)
