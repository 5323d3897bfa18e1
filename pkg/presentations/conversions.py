"""
Conversions between presentations for the Certified Chain Cover Engine.

A co-c.e. presentation and a covering-code enumeration of a compact set
are both turned into the covering semi-decider of a PresentedSet.
"""

import logging
from fractions import Fraction
from typing import Callable, Sequence

from ambient.types import Ball, SetCode
from formal.distance import DistanceExpr
from formal.predicates import balls_formally_disjoint, formally_contained
from .base import Answer, CallablePresentation, CoCePresentation, PresentedSet
from .subdivision import BallGrid, closed_region_in_balls

logger = logging.getLogger(__name__)


def from_coce(P: CoCePresentation) -> PresentedSet:
  """
  PresentedSet of a co-c.e. closed set.

  At fuel f the query checks Î_i ⊆ J_j ∪ I_{P(0)} ∪ ... ∪ I_{P(f-1)} by
  subdivision to depth f.

  Args:
      P: Complement enumeration of the set

  Returns:
      PresentedSet: The covering semi-decider
  """

  def _grid(j: SetCode, fuel: int) -> BallGrid:
    balls = list(j.decoded)
    balls.extend(P.ball(k) for k in range(fuel))
    return BallGrid(balls)

  def covers_query(i: Ball, j: SetCode, fuel: int) -> Answer:
    return Answer.of(closed_region_in_balls(i.center, i.radius, _grid(j, fuel), fuel))

  def anchor_query(a: Sequence[Fraction], n: Fraction, j: SetCode, fuel: int) -> Answer:
    return Answer.of(closed_region_in_balls(tuple(a), Fraction(n), _grid(j, fuel), fuel))

  return CallablePresentation(covers_query, anchor_query)


def _absorbed(ball: Ball, outer: SetCode) -> bool:
  """The ball is a member of outer or formally contained in a member."""
  if ball in outer.decoded:
    return True
  return any(formally_contained(ball, o.center, o.radius) for o in outer.decoded)


def from_semicompact(cov: Callable[[int], SetCode]) -> PresentedSet:
  """
  PresentedSet of a compact set given by an enumeration of covering codes.

  For the covers query the code c = cov(k), k <= fuel, is split into the
  members formally disjoint from I_i (these form l) and the rest; the
  answer is Yes once the rest is absorbed by j, which gives S ⊆ J_j ∪ J_l.

  Args:
      cov: Enumeration k -> code of a rational open set containing S,
          ranging over all such codes

  Returns:
      PresentedSet: The covering semi-decider
  """

  def _confirmed(misses: Callable[[Ball], bool], j: SetCode, fuel: int) -> Answer:
    for k in range(fuel + 1):
      c = cov(k)
      rest = [b for b in c.decoded if not misses(b)]
      if all(_absorbed(b, j) for b in rest):
        logger.debug(f"from_semicompact: cover {k} confirms at fuel {fuel}")
        return Answer.YES
    return Answer.UNKNOWN

  def covers_query(i: Ball, j: SetCode, fuel: int) -> Answer:
    return _confirmed(lambda b: balls_formally_disjoint(i, b), j, fuel)

  def anchor_query(a: Sequence[Fraction], n: Fraction, j: SetCode, fuel: int) -> Answer:
    n = Fraction(n)
    return _confirmed(lambda b: DistanceExpr.between(b.center, a).gt(b.radius + n), j, fuel)

  return CallablePresentation(covers_query, anchor_query)
