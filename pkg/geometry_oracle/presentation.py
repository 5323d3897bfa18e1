"""
Fixture-backed presentations for the Certified Chain Cover Engine.

This module answers the covering queries of a fixture set (curve plus
noise) by exact dyadic subdivision of the query region. Cells are
discarded when they miss the region, when they sit inside one ball of the
candidate code, or when no piece of the set can meet them. Emptiness of a
single closed ball is decided piece by piece instead.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ambient.types import Ball, SetCode
from presentations.base import Answer, PresentedSet
from presentations.subdivision import (
  Box,
  BallGrid,
  box_around,
  box_min_dist2,
  box_misses_closed_ball,
  box_width,
  split_box,
)
from .exact import DEFAULT_SPIRAL_DEPTH_CAP
from .fixtures import Fixture
from .pieces import Piece, UndecidedAtCap, piece_meets_ball

logger = logging.getLogger(__name__)


def pieces_meeting_box(pieces: Sequence[Piece], box: Box, min_size: Fraction) -> List[Piece]:
  """
  Pieces (or refined parts of them) that may meet a closed box.

  Exact pieces are kept iff they meet the box. Enclosure pieces are split
  until their enclosure misses the box or is no wider than min_size, so
  the result never drops a piece that meets the box.
  """
  out: List[Piece] = []
  stack = list(pieces)
  while stack:
    piece = stack.pop()
    verdict = piece.meets_box(box)
    if verdict is not None:
      if verdict:
        out.append(piece)
      continue
    center, radius = piece.enclosure()
    if box_min_dist2(box, center) > radius * radius:
      continue
    if 2 * radius <= min_size:
      out.append(piece)
      continue
    stack.extend(piece.split())
  return out


def region_covered(
  pieces: Sequence[Piece],
  center: Sequence[Fraction],
  radius: Fraction,
  grid: BallGrid,
  depth: int,
) -> bool:
  """
  Decide, up to depth levels of subdivision, that the set of pieces
  intersected with the closed ball (center, radius) lies inside the grid's
  balls. Radius 0 stands for the single point center.
  """
  center = tuple(Fraction(c) for c in center)
  radius = Fraction(radius)
  if radius == 0:
    if grid.point_inside(center):
      return True
    point_box = (center, center)
    return not pieces_meeting_box(pieces, point_box, Fraction(1, 2 ** depth))
  root = box_around(center, radius)
  stack: List[Tuple[Box, List[Piece], int]] = [(root, list(pieces), 0)]
  while stack:
    box, relevant, level = stack.pop()
    if box_misses_closed_ball(box, center, radius):
      continue
    if grid.box_inside(box):
      continue
    relevant = pieces_meeting_box(relevant, box, box_width(box) / 2)
    if not relevant:
      continue
    if level >= depth:
      return False
    stack.extend((child, relevant, level + 1) for child in split_box(box))
  return True

@lru_cache(maxsize=64)
def _ball_grid(j: SetCode) -> BallGrid:
  return BallGrid(j.decoded)


@dataclass(frozen=True)
class FixturePresentation(PresentedSet):
  """
  The PresentedSet of a fixture's curve together with its noise set F.

  Fuel is the subdivision depth. A localized presentation carries only the
  pieces (or refined parts) that meet its box.
  """

  fixture: Fixture
  include_noise: bool = True
  nonempty_hint: bool = True
  spiral_depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP
  local: Optional[Tuple[Piece, ...]] = None

  def _pieces(self) -> List[Piece]:
    if self.local is not None:
      return list(self.local)
    return self.fixture.pieces(self.include_noise)

  def covers(self, i: Ball, j: SetCode, fuel: int) -> Answer:
    result = region_covered(self._pieces(), i.center, i.radius, _ball_grid(j), fuel)
    return Answer.of(result)

  def covers_anchor(self, a: Sequence[Fraction], n: Fraction, j: SetCode, fuel: int) -> Answer:
    result = region_covered(self._pieces(), a, n, _ball_grid(j), fuel)
    return Answer.of(result)

  def misses(self, i: Ball, fuel: int) -> Answer:
    """
    Semi-decide that closed I_i misses the set, one piece at a time.

    Pieces with an exact test answer at once. Spiral pieces are refined to
    depth min(fuel, spiral_depth_cap) and leave the answer Unknown when they
    stay undecided.
    """
    cap = min(fuel, self.spiral_depth_cap)
    for piece in self._pieces():
      try:
        if piece_meets_ball(piece, i.center, i.radius, True, cap):
          return Answer.UNKNOWN
      except UndecidedAtCap:
        return Answer.UNKNOWN
    return Answer.YES

  def localize(self, box: Box) -> "FixturePresentation":
    pieces = pieces_meeting_box(self._pieces(), box, box_width(box) / 2)
    return replace(self, local=tuple(pieces))


def fixture_presentation(
  fx: Fixture,
  include_noise: bool = True,
  spiral_depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
) -> PresentedSet:
  """The PresentedSet of a fixture (curve ∪ F by default)."""
  logger.debug(f"Presenting fixture {fx.id} (noise included: {include_noise})")
  return FixturePresentation(fx, include_noise, bool(fx.pieces(include_noise)), spiral_depth_cap)
