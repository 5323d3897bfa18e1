"""
Numeric codings for the Certified Chain Cover Engine.

This module fixes the ambient space to R^n and implements every coding of
naturals used by the engine: Cantor pairing, the enumerations of rationals
and positive rationals, the dense sequence of rational points, rational
balls, finite sequences and finite sets.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

# Ambient dimension n; every Point must have exactly this many coordinates
_DIMENSION = 2


def get_dimension() -> int:
  """Return the configured ambient dimension."""
  return _DIMENSION


def set_dimension(n: int) -> None:
  """
  Set the ambient dimension.

  Args:
      n: New dimension, at least 1

  Raises:
      ValueError: If n is not a positive integer
  """
  global _DIMENSION
  if not isinstance(n, int) or n < 1:
    raise ValueError(f"ambient dimension must be a positive integer, got {n!r}")
  if n != _DIMENSION:
    logger.info(f"Ambient dimension set to {n}")
    decode_point.cache_clear()
    decode_ball.cache_clear()
  _DIMENSION = n


def pair(a: int, b: int) -> int:
  """Cantor pairing (a+b)(a+b+1)/2 + b."""
  if a < 0 or b < 0:
    raise ValueError(f"pairing is defined on naturals, got ({a}, {b})")
  s = a + b
  return s * (s + 1) // 2 + b


def unpair(z: int) -> Tuple[int, int]:
  """Inverse of pair."""
  if z < 0:
    raise ValueError(f"unpairing is defined on naturals, got {z}")
  w = (isqrt(8 * z + 1) - 1) // 2
  b = z - w * (w + 1) // 2
  return w - b, b


def decode_rational(k: int) -> Fraction:
  """
  The rational enumeration: 0 maps to 0, 2k+1 to +(a+1)/(b+1) and
  2k+2 to -(a+1)/(b+1) where (a, b) = unpair(k). Duplicates occur.
  """
  if k == 0:
    return Fraction(0)
  half, odd = divmod(k - 1, 2)
  a, b = unpair(half)
  value = Fraction(a + 1, b + 1)
  return -value if odd else value


def encode_rational(q: Fraction) -> int:
  """Canonical index of q under decode_rational (lowest terms)."""
  q = Fraction(q)
  if q == 0:
    return 0
  k = pair(abs(q.numerator) - 1, q.denominator - 1)
  return 2 * k + 1 if q > 0 else 2 * k + 2


def decode_positive(k: int) -> Fraction:
  """The positive-rational enumeration qpos(k) = (a+1)/(b+1)."""
  a, b = unpair(k)
  return Fraction(a + 1, b + 1)


def encode_positive(q: Fraction) -> int:
  """Canonical index of a positive rational under decode_positive."""
  q = Fraction(q)
  if q <= 0:
    raise ValueError(f"nonpositive radius: {q}")
  return pair(q.numerator - 1, q.denominator - 1)


@lru_cache(maxsize=65536)
def decode_point(x: int) -> Tuple[Fraction, ...]:
  """
  The dense sequence alpha of rational points.

  The index is unpaired iteratively into n coordinate indices, each of
  which goes through decode_rational.
  """
  coords = []
  rest = x
  for _ in range(_DIMENSION - 1):
    head, rest = unpair(rest)
    coords.append(decode_rational(head))
  coords.append(decode_rational(rest))
  return tuple(coords)


def encode_point(coords: Sequence[Fraction]) -> int:
  """Canonical alpha index of a rational point."""
  if len(coords) != _DIMENSION:
    raise ValueError(f"point has {len(coords)} coordinates, dimension is {_DIMENSION}")
  indices = [encode_rational(c) for c in coords]
  code = indices[-1]
  for idx in reversed(indices[:-1]):
    code = pair(idx, code)
  return code


@lru_cache(maxsize=262144)
def decode_ball(i: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
  """
  Decode a ball index into (center, radius).

  Args:
      i: Ball index

  Returns:
      tuple: (center coordinates, radius) with radius > 0
  """
  t1, t2 = unpair(i)
  return decode_point(t1), decode_positive(t2)


def encode_ball(center: Sequence[Fraction], radius: Fraction) -> int:
  """Canonical ball index of B(center, radius)."""
  return pair(encode_point(center), encode_positive(radius))


def encode_seq(entries: Sequence[int]) -> int:
  """
  Code a nonempty finite sequence of naturals.

  The code is pair(len - 1, fold) where fold right-folds the entries with
  pair. The result grows exponentially in bit length with the number of
  entries.

  Raises:
      ValueError: If the sequence is empty
  """
  if not entries:
    raise ValueError("empty code forbidden")
  fold = entries[-1]
  for x in reversed(entries[:-1]):
    fold = pair(x, fold)
  return pair(len(entries) - 1, fold)


def decode_code(j: int) -> Tuple[int, ...]:
  """Decode a set code into its entry sequence ((j)_0, ..., (j)_last)."""
  last, fold = unpair(j)
  entries: List[int] = []
  for _ in range(last):
    head, fold = unpair(fold)
    entries.append(head)
  entries.append(fold)
  return tuple(entries)


def code_length(j: int) -> int:
  """overline{j}, the index of the last entry of j."""
  return unpair(j)[0]


def code_members(j: int) -> frozenset:
  """[j], the set of entries of j."""
  return frozenset(decode_code(j))


def encode_finite_set(members: Iterable[int]) -> int:
  """
  Code a nonempty finite set in canonical sorted order.

  Raises:
      ValueError: If the set is empty
  """
  entries = sorted(set(members))
  if not entries:
    raise ValueError("empty code forbidden")
  return encode_seq(entries)


def union_code(l: int, p: int, q: int) -> int:
  """
  Code of the union of the links p..q of the chain coded by l.

  Args:
      l: Chain code, a sequence of set codes
      p: First link
      q: Last link

  Returns:
      int: Set code whose members are the union of [(l)_i] for p <= i <= q

  Raises:
      ValueError: If p > q or q exceeds the last link index
  """
  links = decode_code(l)
  if p < 0 or p > q or q >= len(links):
    raise ValueError(f"empty/invalid segment: p={p}, q={q}, last={len(links) - 1}")
  members = set()
  for link in links[p:q + 1]:
    members.update(decode_code(link))
  return encode_finite_set(members)
