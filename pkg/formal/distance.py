"""
Exact distance expressions for the Certified Chain Cover Engine.

Distances between rational points are square roots of rationals. A
DistanceExpr stands for sqrt(radicand) + offset and is compared against
rationals by sign analysis and a single squaring, so no floating point
enters any decision.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from ambient.types import dist2


@dataclass(frozen=True)
class DistanceExpr:
  """sqrt(radicand) + offset with a nonnegative rational radicand."""

  radicand: Fraction
  offset: Fraction = Fraction(0)

  def __post_init__(self):
    object.__setattr__(self, "radicand", Fraction(self.radicand))
    object.__setattr__(self, "offset", Fraction(self.offset))
    if self.radicand < 0:
      raise ValueError(f"negative radicand: {self.radicand}")

  @classmethod
  def between(cls, u: Sequence[Fraction], v: Sequence[Fraction], offset: Fraction = Fraction(0)) -> "DistanceExpr":
    """d(u, v) + offset."""
    return cls(dist2(u, v), offset)

  def compare(self, t: Fraction) -> int:
    """Sign of (sqrt(radicand) + offset - t): -1, 0 or 1."""
    w = Fraction(t) - self.offset
    # sqrt(r) >= 0, so a negative target is always exceeded
    if w < 0:
      return 1
    w2 = w * w
    if self.radicand < w2:
      return -1
    if self.radicand > w2:
      return 1
    return 0

  def lt(self, t: Fraction) -> bool:
    return self.compare(t) < 0

  def le(self, t: Fraction) -> bool:
    return self.compare(t) <= 0

  def gt(self, t: Fraction) -> bool:
    return self.compare(t) > 0

  def ge(self, t: Fraction) -> bool:
    return self.compare(t) >= 0


def sqrt_lower(q: Fraction, bits: int = 32) -> Fraction:
  """Rational lower bound of sqrt(q) within 2^-bits."""
  q = Fraction(q)
  if q <= 0:
    return Fraction(0)
  scale = 1 << bits
  num = q.numerator * q.denominator * scale * scale
  return Fraction(isqrt(num), q.denominator * scale)


def sqrt_upper(q: Fraction, bits: int = 32) -> Fraction:
  """Rational upper bound of sqrt(q) within 2^-bits."""
  q = Fraction(q)
  if q <= 0:
    return Fraction(0)
  scale = 1 << bits
  num = q.numerator * q.denominator * scale * scale
  root = isqrt(num)
  if root * root == num:
    return Fraction(root, q.denominator * scale)
  return Fraction(root + 1, q.denominator * scale)
