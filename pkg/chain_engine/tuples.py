"""
Search tuples for the Certified Chain Cover Engine.

Chains and open sets are held decoded (FormalChain, SetCode); their
natural-number codes are available on demand.
"""

from dataclasses import dataclass
from typing import Dict, Tuple, Union

from ambient.types import SetCode, format_rational
from formal.chains import FormalChain


@dataclass(frozen=True)
class RayTuple:
  """(n, k, m, ℓ, p, u) for the ray conditions."""

  n: int
  k: int
  m: int
  chain: FormalChain
  p: int
  u: SetCode

  def segment(self) -> Tuple[SetCode, ...]:
    """H_ℓ^{0<=p}"""
    return self.chain.segment(0, self.p)


@dataclass(frozen=True)
class LineTuple:
  """(n, k, m, ℓ, p, q, e, u) for the line conditions."""

  n: int
  k: int
  m: int
  chain: FormalChain
  p: int
  q: int
  e: int
  u: SetCode

  def segment(self) -> Tuple[SetCode, ...]:
    """H_ℓ^{p<=q}"""
    return self.chain.segment(self.p, self.q)


SearchTuple = Union[RayTuple, LineTuple]


@dataclass(frozen=True)
class Witness:
  """A certified tuple with the fuel and stage it was certified at."""

  tuple: SearchTuple
  fuel: int
  stage: int

  @property
  def mode(self) -> str:
    return "ray" if isinstance(self.tuple, RayTuple) else "line"

  @property
  def links(self) -> Tuple[SetCode, ...]:
    """The certified segment."""
    return self.tuple.segment()

  def summary(self) -> Dict[str, object]:
    t = self.tuple
    data: Dict[str, object] = {
      "mode": self.mode,
      "n": t.n,
      "k": t.k,
      "m": t.m,
      "p": t.p,
      "chain_links": len(t.chain),
      "u_balls": len(t.u.members),
      "fuel": self.fuel,
      "stage": self.stage,
    }
    if isinstance(t, LineTuple):
      data["q"] = t.q
      data["e"] = t.e
    data["u_radii"] = sorted({format_rational(b.radius) for b in t.u.decoded})
    return data
