"""
Quadratic surds for the Certified Chain Cover Engine.

Parameter values where a line or a rational circle chart crosses a sphere
are roots of rational quadratics, p + q*sqrt(d). Comparing two of them
needs the sign of A + B*sqrt(C) + E*sqrt(F), which is decided here with
rational arithmetic only.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import List, Optional, Tuple


def _sign(x: Fraction) -> int:
  return (x > 0) - (x < 0)


def sign_surd(p: Fraction, q: Fraction, r: Fraction) -> int:
  """Sign of p + q*sqrt(r) for r >= 0."""
  sq = _sign(q) if r > 0 else 0
  sp = _sign(p)
  if sq == 0:
    return sp
  if sp == 0 or sp == sq:
    return sq
  lhs, rhs = p * p, q * q * r
  if lhs > rhs:
    return sp
  if lhs < rhs:
    return sq
  return 0


def sign_two_surds(a: Fraction, b: Fraction, c: Fraction, e: Fraction, f: Fraction) -> int:
  """Sign of a + b*sqrt(c) + e*sqrt(f) for c, f >= 0."""
  sb = _sign(b) if c > 0 else 0
  se = _sign(e) if f > 0 else 0
  if sb == 0:
    return sign_surd(a, e, f)
  if se == 0:
    return sign_surd(a, b, c)
  # sign of x = b*sqrt(c) + e*sqrt(f)
  if sb == se:
    sx = sb
  else:
    bc, ef = b * b * c, e * e * f
    sx = sb if bc > ef else se if bc < ef else 0
  sa = _sign(a)
  if sx == 0:
    return sa
  if sa == 0 or sa == sx:
    return sx
  # compare x^2 = b^2 c + e^2 f + 2be*sqrt(cf) against a^2
  s = sign_surd(b * b * c + e * e * f - a * a, 2 * b * e, c * f)
  if s > 0:
    return sx
  if s < 0:
    return sa
  return 0


@total_ordering
@dataclass(frozen=True)
class QuadraticSurd:
  """The real number p + q*sqrt(d) with rational p, q and d >= 0."""

  p: Fraction
  q: Fraction = Fraction(0)
  d: Fraction = Fraction(0)

  def __post_init__(self):
    object.__setattr__(self, "p", Fraction(self.p))
    object.__setattr__(self, "q", Fraction(self.q))
    object.__setattr__(self, "d", Fraction(self.d))
    if self.d < 0:
      raise ValueError(f"negative radicand: {self.d}")

  @classmethod
  def rational(cls, x: Fraction) -> "QuadraticSurd":
    return cls(Fraction(x))

  def compare(self, other: "QuadraticSurd") -> int:
    return sign_two_surds(self.p - other.p, self.q, self.d, -other.q, other.d)

  def __eq__(self, other) -> bool:
    if not isinstance(other, QuadraticSurd):
      return NotImplemented
    return self.compare(other) == 0

  def __lt__(self, other: "QuadraticSurd") -> bool:
    return self.compare(other) < 0

  def __hash__(self) -> int:
    return hash((self.p, self.q, self.d))

  def __float__(self) -> float:
    return float(self.p) + float(self.q) * float(self.d) ** 0.5


Interval = Tuple[QuadraticSurd, QuadraticSurd]


def quadratic_solutions(
  alpha: Fraction,
  beta: Fraction,
  gamma: Fraction,
  strict: bool,
  lo: Fraction,
  hi: Optional[Fraction],
) -> List[Interval]:
  """
  Solution set of alpha u^2 + 2 beta u + gamma < 0 (strict) or <= 0 on the
  domain [lo, hi], hi = None meaning unbounded above.

  Strict solution sets come back as open intervals whose unbounded ends are
  replaced by lo - 1 and hi + 1 (or a large bound), so they read as open
  relative to the domain. Non-strict sets come back as closed intervals
  clipped to the domain.

  Returns:
      list: At most two (left, right) intervals, in increasing order
  """
  alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
  below = QuadraticSurd.rational(lo - 1)
  top = hi if hi is not None else lo + 1 + abs(gamma) + abs(beta) + abs(alpha)
  above = QuadraticSurd.rational(top + 1)
  pieces: List[Interval] = []
  if alpha == 0:
    if beta == 0:
      ok = gamma < 0 if strict else gamma <= 0
      pieces = [(below, above)] if ok else []
    else:
      root = QuadraticSurd.rational(-gamma / (2 * beta))
      pieces = [(below, root)] if beta > 0 else [(root, above)]
  else:
    disc = beta * beta - alpha * gamma
    if alpha > 0:
      if disc < 0 or (strict and disc == 0):
        pieces = []
      else:
        left = QuadraticSurd(-beta / alpha, -1 / alpha, disc)
        right = QuadraticSurd(-beta / alpha, 1 / alpha, disc)
        pieces = [(left, right)]
    else:
      if disc < 0 or (disc == 0 and not strict):
        pieces = [(below, above)]
      elif disc == 0:
        root = QuadraticSurd.rational(-beta / alpha)
        pieces = [(below, root), (root, above)]
      else:
        # alpha < 0 flips the root order
        small = QuadraticSurd(-beta / alpha, 1 / alpha, disc)
        large = QuadraticSurd(-beta / alpha, -1 / alpha, disc)
        pieces = [(below, small), (large, above)]
  if strict:
    return pieces
  lo_s = QuadraticSurd.rational(lo)
  hi_s = QuadraticSurd.rational(top)
  clipped = []
  for left, right in pieces:
    left = max(left, lo_s)
    right = min(right, hi_s) if hi is not None else right
    if not right < left:
      clipped.append((left, right))
  return clipped


def closed_covered_by_open(target: Interval, opens: List[Interval]) -> bool:
  """Whether the closed interval target lies in the union of the open intervals."""
  start, end = target
  ordered = sorted(opens, key=lambda iv: iv[0])
  pos = start
  idx = 0
  best: Optional[QuadraticSurd] = None
  while True:
    while idx < len(ordered) and ordered[idx][0] < pos:
      right = ordered[idx][1]
      if best is None or best < right:
        best = right
      idx += 1
    if best is None or not pos < best:
      return False
    if end < best:
      return True
    pos = best
