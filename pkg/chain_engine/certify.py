"""
Tuple certification for the Certified Chain Cover Engine.

The ray conditions (1)-(8) and line conditions (1)-(10) are checked in a
fixed order: the code-only conditions first, then the point and oracle
conditions at the given fuel. The first unconfirmed condition is reported
by number; a tuple certifies exactly when there is none.

Ray conditions:
  1. H_ℓ is a formal chain
  2. J_u and H_ℓ are formally disjoint
  3. f(0) ∈ J_{(ℓ)_0}
  4. (R ∪ F) ∩ B̂(a, n) ⊆ ∪H_ℓ^{0<=p} ∪ J_u
  5. (R ∪ F) ∩ B̂(a, m) ⊆ ∪H_ℓ ∪ J_u
  6. H_ℓ^{0<=p} formally contained in B(a, m)
  7. p < last, m >= 1
  8. fmesh(ℓ) < 2^-k

Line conditions:
  1. H_ℓ is a formal chain
  2. J_u and H_ℓ are formally disjoint
  3. (L ∪ F) ∩ B̂(a, n) ⊆ ∪H_ℓ^{p<=q} ∪ J_u
  4. (L ∪ F) ∩ B̂(a, m) ⊆ ∪H_ℓ ∪ J_u
  5. H_ℓ^{p<=q} formally contained in B(a, m)
  6. p < e < q < last, m >= 1
  7. fmesh(ℓ) < 2^-(k + k0 + 3)
  8. I_A and H_ℓ^{e<=last} formally disjoint
  9. I_B and H_ℓ^{0<=e} formally disjoint
  10. I_C and J_u formally disjoint
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ambient.types import Ball, SetCode
from formal.chains import disjoint_from_chain, fmesh_lt, is_formal_chain, segment_contained
from formal.predicates import formally_disjoint
from geometry_oracle.fixtures import LineAnchorHint
from presentations.base import Answer, ComputablePointSeq, PresentedSet
from presentations.queries import point_in_code
from .tuples import LineTuple, RayTuple

logger = logging.getLogger(__name__)

RAY_ORDER = (7, 8, 1, 2, 6, 3, 4, 5)
LINE_ORDER = (6, 7, 1, 2, 5, 8, 9, 10, 3, 4)


@lru_cache(maxsize=256)
def _union(links: Tuple[SetCode, ...], u: SetCode) -> SetCode:
  """Union code of the links and u."""
  balls: List[Ball] = []
  for link in links:
    balls.extend(link.decoded)
  balls.extend(u.decoded)
  return SetCode.from_balls(balls)


def ray_formal_failure(t: RayTuple, a: Sequence[Fraction]) -> Optional[int]:
  """First failing fuel-independent ray condition among 7, 8, 1, 2, 6."""
  if not (0 <= t.p < t.chain.last and t.m >= 1):
    return 7
  if not fmesh_lt(t.chain, Fraction(1, 2 ** t.k)):
    return 8
  if not is_formal_chain(t.chain):
    return 1
  if not disjoint_from_chain(t.u, t.chain.links):
    return 2
  if not segment_contained(t.chain.segment(0, t.p), a, Fraction(t.m)):
    return 6
  return None


def ray_oracle_failure(
  t: RayTuple,
  S: PresentedSet,
  endpoint: ComputablePointSeq,
  a: Sequence[Fraction],
  fuel: int,
) -> Optional[int]:
  """First failing fuel-dependent ray condition among 3, 4, 5."""
  if not point_in_code(endpoint, t.chain[0], fuel):
    return 3
  if not S.covers_anchor(a, Fraction(t.n), _union(t.chain.segment(0, t.p), t.u), fuel):
    return 4
  if not S.covers_anchor(a, Fraction(t.m), _union(t.chain.links, t.u), fuel):
    return 5
  return None


def ray_first_failure(
  t: RayTuple,
  S: PresentedSet,
  endpoint: ComputablePointSeq,
  a: Sequence[Fraction],
  fuel: int,
) -> Optional[int]:
  """
  The number of the first ray condition not confirmed at this fuel.

  Args:
      t: The tuple
      S: Presentation of R ∪ F
      endpoint: The computable endpoint f(0)
      a: Anchor with d(a, f(0)) < 1
      fuel: Oracle fuel

  Returns:
      Optional[int]: None when all eight conditions hold
  """
  failed = ray_formal_failure(t, a)
  if failed is None:
    failed = ray_oracle_failure(t, S, endpoint, a, fuel)
  logger.debug(f"ray tuple m={t.m} p={t.p} at fuel {fuel}: first failure {failed}")
  return failed


def ray_certify(
  t: RayTuple,
  S: PresentedSet,
  endpoint: ComputablePointSeq,
  a: Sequence[Fraction],
  fuel: int,
) -> Answer:
  """Yes iff all ray conditions confirm at this fuel."""
  return Answer.of(ray_first_failure(t, S, endpoint, a, fuel) is None)


def line_formal_failure(t: LineTuple, hint: LineAnchorHint) -> Optional[int]:
  """First failing fuel-independent line condition among 6, 7, 1, 2, 5, 8, 9, 10."""
  if not (0 <= t.p < t.e < t.q < t.chain.last and t.m >= 1):
    return 6
  if not fmesh_lt(t.chain, Fraction(1, 2 ** (t.k + hint.k0 + 3))):
    return 7
  if not is_formal_chain(t.chain):
    return 1
  if not disjoint_from_chain(t.u, t.chain.links):
    return 2
  if not segment_contained(t.chain.segment(t.p, t.q), hint.a.coords, Fraction(t.m)):
    return 5
  if not disjoint_from_chain(hint.ball_a, t.chain.segment(t.e, t.chain.last)):
    return 8
  if not disjoint_from_chain(hint.ball_b, t.chain.segment(0, t.e)):
    return 9
  if not formally_disjoint(hint.ball_c, t.u):
    return 10
  return None


def line_oracle_failure(t: LineTuple, S: PresentedSet, hint: LineAnchorHint, fuel: int) -> Optional[int]:
  """First failing fuel-dependent line condition among 3, 4."""
  a = hint.a.coords
  if not S.covers_anchor(a, Fraction(t.n), _union(t.chain.segment(t.p, t.q), t.u), fuel):
    return 3
  if not S.covers_anchor(a, Fraction(t.m), _union(t.chain.links, t.u), fuel):
    return 4
  return None


def line_first_failure(t: LineTuple, S: PresentedSet, hint: LineAnchorHint, fuel: int) -> Optional[int]:
  """
  The number of the first line condition not confirmed at this fuel.

  Args:
      t: The tuple
      S: Presentation of L ∪ F
      hint: Anchor hint; the anchor point is hint.a
      fuel: Oracle fuel

  Returns:
      Optional[int]: None when all ten conditions hold

  Note:
      With a hint that violates its own conditions a Yes is not sound.
  """
  failed = line_formal_failure(t, hint)
  if failed is None:
    failed = line_oracle_failure(t, S, hint, fuel)
  logger.debug(f"line tuple m={t.m} p={t.p} e={t.e} q={t.q} at fuel {fuel}: first failure {failed}")
  return failed


def line_certify(t: LineTuple, S: PresentedSet, hint: LineAnchorHint, fuel: int) -> Answer:
  """Yes iff all line conditions confirm at this fuel."""
  return Answer.of(line_first_failure(t, S, hint, fuel) is None)
