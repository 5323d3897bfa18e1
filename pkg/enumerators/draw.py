"""
Certified drawing for the Certified Chain Cover Engine.

A drawing is the certified segment of a witness: every link meets the
presented ray or line, the links cover its part in the closed ball
B̂(a, n), and every link has formal diameter below the mesh bound.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ambient.types import Ball, Point, SetCode, format_rational
from chain_engine.search import SearchInputs, SearchLimits, search
from chain_engine.tuples import Witness

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CertifiedCover:
  """The certified links for (a, n, k) together with their witness."""

  mode: str
  anchor: Point
  n: int
  k: int
  links: Tuple[SetCode, ...]
  witness: Witness
  mesh_exponent: int

  @property
  def mesh(self) -> Fraction:
    return Fraction(1, 2 ** self.mesh_exponent)

  def balls(self) -> List[Tuple[int, Ball]]:
    """(link ordinal, ball) pairs in link order, balls in canonical order."""
    return [(ordinal, ball) for ordinal, link in enumerate(self.links) for ball in link.decoded]

  def metadata(self) -> Dict[str, object]:
    return {
      "mode": self.mode,
      "anchor": [format_rational(c) for c in self.anchor.coords],
      "n": self.n,
      "k": self.k,
      "mesh_exponent": self.mesh_exponent,
      "links": len(self.links),
      "witness": self.witness.summary(),
    }


def draw(
  mode: str,
  inputs: SearchInputs,
  a: Optional[Point],
  n: int,
  k: int,
  limits: Optional[SearchLimits] = None,
) -> CertifiedCover:
  """
  Draw the presented ray or line at anchor a, radius n and resolution 2^-k.

  Args:
      mode: "ray" or "line"
      inputs: Presentation with endpoint (ray) or hint (line)
      a: Anchor; None takes the default anchor of the inputs
      n: Radius of the closed ball to cover
      k: Resolution exponent
      limits: Search caps

  Returns:
      CertifiedCover: The certified links

  Raises:
      ValueError: For a line anchor other than the hint's point, or n = 0 in line mode
      SearchBudgetExhausted: When the search budget runs out
  """
  if mode == "line":
    if n < 1:
      raise ValueError("line drawings need n >= 1")
    if a is not None and a != inputs.hint.a:
      raise ValueError(f"line drawings anchor at the hint point {inputs.hint.a.format(',')}")
  elif a is not None:
    inputs = replace(inputs, anchor=a)
  witness = search(mode, inputs, n, k, limits)
  mesh_exponent = k if mode == "ray" else k + inputs.hint.k0 + 3
  cover = CertifiedCover(
    mode=mode,
    anchor=inputs.anchor_point(),
    n=n,
    k=k,
    links=witness.links,
    witness=witness,
    mesh_exponent=mesh_exponent,
  )
  logger.info(f"Drew {mode} cover with {len(cover.links)} links ({len(cover.balls())} balls)")
  return cover
