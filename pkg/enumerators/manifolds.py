"""
Manifold reductions for the Certified Chain Cover Engine.

A compact component K of a presented set M that is isolated by finitely
many closed balls gets a compact cover procedure. An isolated boundary
point is recovered through the same procedure and singleton extraction.
"""

import logging
from typing import List, Sequence, Union

from ambient.types import Ball, Point, SetCode
from presentations.base import Answer, CompactCover, PresentedSet
from presentations.queries import point_from_singleton

logger = logging.getLogger(__name__)

BallRef = Union[int, Ball]


def _balls(isolating: Sequence[BallRef]) -> List[Ball]:
  return [b if isinstance(b, Ball) else Ball.from_index(b) for b in isolating]


def compact_component_cover(M: PresentedSet, isolating: Sequence[BallRef]) -> CompactCover:
  """
  Compact cover procedure of the component K isolated by the given balls.

  K ⊆ J_j holds exactly when M ∩ Î_t ⊆ J_j for every isolating ball, so
  the procedure answers Yes when every one of those queries does.

  Args:
      M: The presented set
      isolating: Closed balls that cover K and miss the rest of M

  Returns:
      CompactCover: Semi-decider of K ⊆ J_j

  Raises:
      ValueError: If no isolating ball is given
  """
  balls = _balls(isolating)
  if not balls:
    raise ValueError("compact_component_cover needs at least one isolating ball")

  def query(j: SetCode, fuel: int) -> Answer:
    return Answer.of(all(M.covers(b, j, fuel) for b in balls))

  return CompactCover(query)


def boundary_point(M: PresentedSet, boundary: PresentedSet, isolating: BallRef, k: int) -> Point:
  """
  The boundary point x isolated by a closed ball, to within 2^-k.

  Boundary points of M lie in M, so a cover of M inside the isolating
  ball also covers x; both presentations are consulted.

  Args:
      M: The presented manifold
      boundary: Presentation of its boundary
      isolating: Closed ball meeting the boundary in exactly one point
      k: Precision exponent

  Returns:
      Point: A rational point within 2^-k of x

  Note:
      The search does not terminate when the isolating ball meets the
      boundary in more than one point or in none.
  """
  ball = _balls([isolating])[0]
  on_boundary = compact_component_cover(boundary, [ball])

  def query(j: SetCode, fuel: int) -> Answer:
    if on_boundary(j, fuel):
      return Answer.YES
    return M.covers(ball, j, fuel)

  point = point_from_singleton(CompactCover(query), k, anchor=(ball.center, ball.radius))
  logger.info(f"Boundary point near {point.format(',')} at precision 2^-{k}")
  return point
