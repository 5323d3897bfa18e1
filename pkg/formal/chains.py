"""
Formal chains for the Certified Chain Cover Engine.

A formal chain is a finite sequence of rational open sets in which links
that are not neighbours are formally disjoint.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from ambient.codings import decode_code, encode_seq
from ambient.types import Ball, SetCode
from .predicates import BallLike, as_balls, fdiam_lt, formally_contained, formally_disjoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormalChain:
  """H_l = (J_(l)_0, ..., J_(l)_last), held decoded."""

  links: Tuple[SetCode, ...]

  def __post_init__(self):
    links = tuple(self.links)
    if not links:
      raise ValueError("empty code forbidden")
    object.__setattr__(self, "links", links)

  @classmethod
  def from_code(cls, l: int) -> "FormalChain":
    return cls(tuple(SetCode.from_code(j) for j in decode_code(l)))

  @property
  def code(self) -> int:
    """Natural-number code l; only feasible for short chains."""
    return encode_seq([link.code for link in self.links])

  @property
  def last(self) -> int:
    """overline{l}"""
    return len(self.links) - 1

  def __len__(self) -> int:
    return len(self.links)

  def __getitem__(self, idx: int) -> SetCode:
    return self.links[idx]

  def segment(self, p: int, q: int) -> Tuple[SetCode, ...]:
    """H_l^{p<=q} as a tuple of links."""
    if p < 0 or p > q or q > self.last:
      raise ValueError(f"empty/invalid segment: p={p}, q={q}, last={self.last}")
    return self.links[p:q + 1]

  def segment_union(self, p: int, q: int) -> SetCode:
    """The set code of the union of links p..q."""
    members = set()
    for link in self.segment(p, q):
      members.update(link.members)
    return SetCode.from_members(members)

  def balls(self, p: int = 0, q: int = None) -> List[Ball]:
    q = self.last if q is None else q
    out: List[Ball] = []
    for link in self.segment(p, q):
      out.extend(link.decoded)
    return out


def _x_extent(link: SetCode) -> Tuple[Fraction, Fraction]:
  balls = link.decoded
  return (min(b.center[0] - b.radius for b in balls), max(b.center[0] + b.radius for b in balls))


def is_formal_chain(chain: FormalChain) -> bool:
  """
  Non-neighbouring links are pairwise formally disjoint.

  Links whose first-coordinate extents are separated are disjoint without
  looking at ball pairs; only overlapping extents are checked in full.
  """
  if len(chain) <= 2:
    return True
  extents = [_x_extent(link) for link in chain.links]
  order = sorted(range(len(chain)), key=lambda i: extents[i][0])
  for pos, i in enumerate(order):
    right = extents[i][1]
    for j in order[pos + 1:]:
      if extents[j][0] > right:
        break
      if abs(i - j) > 1 and not formally_disjoint(chain.links[i], chain.links[j]):
        logger.debug(f"Links {i} and {j} are not formally disjoint")
        return False
  return True


def fmesh_lt(chain: FormalChain, t: Fraction) -> bool:
  """fmesh(l) < t."""
  return all(fdiam_lt(link, t) for link in chain.links)


def disjoint_from_chain(u: BallLike, links: Iterable[SetCode]) -> bool:
  """J_u (or a ball) formally disjoint from every given link."""
  balls: List[Ball] = []
  for link in links:
    balls.extend(link.decoded)
  return formally_disjoint(u, balls)


def segment_contained(links: Sequence[SetCode], a: Sequence[Fraction], m: Fraction) -> bool:
  """Every given link formally contained in B(a, m)."""
  return all(formally_contained(link, a, m) for link in links)
