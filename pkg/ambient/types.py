"""
Domain types for the Certified Chain Cover Engine.

This module defines exact rational points, rational balls and set codes,
together with the "p/q" text format used by every file the engine reads or
writes.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from .codings import (
  decode_ball,
  decode_code,
  encode_ball,
  encode_seq,
  get_dimension,
)

logger = logging.getLogger(__name__)

RationalLike = Union[Fraction, int, str]


def parse_rational(text: RationalLike) -> Fraction:
  """
  Parse an exact rational.

  Accepts "p/q", "p" and ints. Decimal notation is rejected so every value
  in a file is exact by construction.

  Raises:
      ValueError: If the text is not an exact rational
  """
  if isinstance(text, Fraction):
    return text
  if isinstance(text, int) and not isinstance(text, bool):
    return Fraction(text)
  if not isinstance(text, str):
    raise ValueError(f"expected a rational string 'p/q', got {text!r}")
  body = text.strip()
  if not body or "." in body or "e" in body.lower():
    raise ValueError(f"expected a rational string 'p/q', got {text!r}")
  try:
    value = Fraction(body)
  except (ValueError, ZeroDivisionError) as e:
    raise ValueError(f"malformed rational {text!r}: {e}")
  return value


def format_rational(q: Fraction) -> str:
  """Format a rational as "p/q" (always with a denominator)."""
  q = Fraction(q)
  return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Point:
  """An immutable rational point of the ambient space."""

  coords: Tuple[Fraction, ...]

  def __post_init__(self):
    coords = tuple(Fraction(c) for c in self.coords)
    if len(coords) != get_dimension():
      raise ValueError(f"point has {len(coords)} coordinates, dimension is {get_dimension()}")
    object.__setattr__(self, "coords", coords)

  @classmethod
  def of(cls, *coords: RationalLike) -> "Point":
    return cls(tuple(parse_rational(c) for c in coords))

  @classmethod
  def parse(cls, text: str, sep: str = ",") -> "Point":
    """Parse "p/q,p/q" (or another separator) into a point."""
    return cls(tuple(parse_rational(part) for part in text.split(sep)))

  def format(self, sep: str = ";") -> str:
    return sep.join(format_rational(c) for c in self.coords)

  def __iter__(self) -> Iterator[Fraction]:
    return iter(self.coords)

  def __len__(self) -> int:
    return len(self.coords)

  def __getitem__(self, idx: int) -> Fraction:
    return self.coords[idx]


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
  return tuple(a - b for a, b in zip(u, v))


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
  return tuple(a + b for a, b in zip(u, v))


def vscale(s: Fraction, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
  return tuple(s * a for a in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
  return sum((a * b for a, b in zip(u, v)), Fraction(0))


def dist2(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
  """Squared Euclidean distance, exact."""
  return sum(((a - b) * (a - b) for a, b in zip(u, v)), Fraction(0))


def norm1(v: Sequence[Fraction]) -> Fraction:
  """L1 norm, a rational upper bound for the Euclidean norm."""
  return sum((abs(a) for a in v), Fraction(0))


@dataclass(frozen=True)
class Ball:
  """An open rational ball B(center, radius); its closure is the closed ball."""

  center: Tuple[Fraction, ...]
  radius: Fraction

  def __post_init__(self):
    object.__setattr__(self, "center", tuple(Fraction(c) for c in self.center))
    object.__setattr__(self, "radius", Fraction(self.radius))
    if self.radius <= 0:
      raise ValueError(f"nonpositive radius: {self.radius}")

  @classmethod
  def from_index(cls, i: int) -> "Ball":
    center, radius = decode_ball(i)
    return cls(center, radius)

  @property
  def index(self) -> int:
    """Canonical ball index."""
    return encode_ball(self.center, self.radius)

  def contains(self, x: Sequence[Fraction], closed: bool = False) -> bool:
    d2 = dist2(self.center, x)
    r2 = self.radius * self.radius
    return d2 <= r2 if closed else d2 < r2


@dataclass(frozen=True)
class SetCode:
  """
  A rational open set J_j held as its decoded entry sequence.

  The natural-number code is computed on demand through `code`; for long
  sequences it is astronomically large, so the engine passes SetCode
  values around and only serializes ball indices.
  """

  balls: Tuple[int, ...]

  def __post_init__(self):
    balls = tuple(int(b) for b in self.balls)
    if not balls:
      raise ValueError("empty code forbidden")
    if any(b < 0 for b in balls):
      raise ValueError(f"ball indices are naturals, got {balls}")
    object.__setattr__(self, "balls", balls)

  @classmethod
  def from_code(cls, j: int) -> "SetCode":
    return cls(decode_code(j))

  @classmethod
  def from_members(cls, members: Iterable[int]) -> "SetCode":
    """Canonical code of a nonempty finite set of ball indices (sorted)."""
    entries = tuple(sorted(set(members)))
    if not entries:
      raise ValueError("empty code forbidden")
    return cls(entries)

  @classmethod
  def from_balls(cls, balls: Iterable[Ball]) -> "SetCode":
    """Canonical code of a nonempty set of balls; the decoded balls are kept."""
    by_index = {}
    for b in balls:
      by_index.setdefault(b.index, b)
    code = cls.from_members(by_index)
    # cached_property storage; skips decoding the indices again
    code.__dict__["decoded"] = [by_index[i] for i in sorted(by_index)]
    return code

  @property
  def code(self) -> int:
    return encode_seq(self.balls)

  @property
  def last(self) -> int:
    """overline{j}"""
    return len(self.balls) - 1

  @property
  def members(self) -> frozenset:
    """[j]"""
    return frozenset(self.balls)

  @cached_property
  def decoded(self) -> List[Ball]:
    """The member balls, one per distinct index, in canonical order."""
    return [Ball.from_index(i) for i in sorted(self.members)]

  def union(self, other: "SetCode") -> "SetCode":
    return SetCode.from_members(self.members | other.members)

  def contains(self, x: Sequence[Fraction]) -> bool:
    """Exact membership of a rational point in J_j."""
    return any(b.contains(x) for b in self.decoded)
