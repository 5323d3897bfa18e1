"""
Oracle model for the Certified Chain Cover Engine.

A closed set S is presented by a fuel-bounded semi-decider for the relation
"closed ball I_i meets S only inside J_j". Semi-decision is total here:
every query answers Yes or Unknown for a given fuel, a Yes at fuel f stays
Yes at every larger fuel, and every true query answers Yes at some fuel.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence, Tuple

from ambient.types import Ball, Point, SetCode

logger = logging.getLogger(__name__)


class Answer(Enum):
  """Outcome of a fuel-bounded semi-decision."""

  YES = "yes"
  UNKNOWN = "unknown"

  @classmethod
  def of(cls, flag: bool) -> "Answer":
    return cls.YES if flag else cls.UNKNOWN

  def __bool__(self) -> bool:
    return self is Answer.YES


def disjoint_far_ball(ball: Ball) -> Ball:
  """
  The canonical ball formally disjoint from a ball: center shifted by
  2ρ + 1 along the first axis, radius 1/2.
  """
  shift = 2 * ball.radius + 1
  center = (ball.center[0] + shift,) + tuple(ball.center[1:])
  return Ball(center, Fraction(1, 2))


class PresentedSet(ABC):
  """
  A closed set given by its covering semi-decider.

  Implementations must be immutable so parallel searchers can share them.
  """

  nonempty_hint: bool = True

  @abstractmethod
  def covers(self, i: Ball, j: SetCode, fuel: int) -> Answer:
    """Semi-decide closed I_i intersected with S is contained in J_j."""

  @abstractmethod
  def covers_anchor(self, a: Sequence[Fraction], n: Fraction, j: SetCode, fuel: int) -> Answer:
    """
    Semi-decide S intersected with the closed ball around a of radius n is
    contained in J_j. For n = 0 the closed ball is the single point a.
    """

  def misses(self, i: Ball, fuel: int) -> Answer:
    """
    Semi-decide that closed I_i does not meet S.

    The default asks covers with the far ball of i as the only member; that
    ball is formally disjoint from I_i, so a Yes leaves no room for S.
    """
    return self.covers(i, SetCode.from_balls([disjoint_far_ball(i)]), fuel)

  def localize(self, box: Tuple[Sequence[Fraction], Sequence[Fraction]]) -> "PresentedSet":
    """
    A presentation that answers like this one for balls inside the closed
    box. Queries reaching outside the box are not covered by this promise.
    """
    return self

  def restrict(self, a: Sequence[Fraction], n: Fraction) -> "CompactCover":
    """The compact piece S intersected with the closed ball (a, n)."""
    return CompactCover(lambda j, fuel: self.covers_anchor(a, n, j, fuel))


@dataclass(frozen=True)
class CompactCover:
  """
  Semi-decider of "K is contained in J_j" for a compact set K.

  This is a semi-computable-compact presentation.
  """

  query: Callable[[SetCode, int], Answer]

  def __call__(self, j: SetCode, fuel: int) -> Answer:
    return self.query(j, fuel)


@dataclass(frozen=True)
class CallablePresentation(PresentedSet):
  """A PresentedSet assembled from two query procedures."""

  covers_query: Callable[[Ball, SetCode, int], Answer]
  anchor_query: Callable[[Sequence[Fraction], Fraction, SetCode, int], Answer]
  nonempty_hint: bool = True

  def covers(self, i: Ball, j: SetCode, fuel: int) -> Answer:
    return self.covers_query(i, j, fuel)

  def covers_anchor(self, a: Sequence[Fraction], n: Fraction, j: SetCode, fuel: int) -> Answer:
    return self.anchor_query(a, n, j, fuel)


@dataclass(frozen=True)
class ComputablePointSeq:
  """A computable point given by approximations within 2^-k."""

  approx: Callable[[int], Point]

  @classmethod
  def constant(cls, point: Point) -> "ComputablePointSeq":
    return cls(lambda k: point)

  def __call__(self, k: int) -> Point:
    return self.approx(k)


@dataclass(frozen=True)
class CoCePresentation:
  """A closed set given as the complement of an enumerated union of balls."""

  complement_enum: Callable[[int], int]

  def ball(self, k: int) -> Ball:
    return Ball.from_index(self.complement_enum(k))
