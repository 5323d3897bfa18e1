"""
Exact dyadic subdivision for the Certified Chain Cover Engine.

Boxes are pairs (lo, hi) of rational corner tuples. A box is inside an open
ball exactly when its farthest corner is, since both are convex.
"""

import itertools
import logging
from fractions import Fraction
from math import floor
from typing import Dict, Iterable, List, Sequence, Tuple

from ambient.types import Ball, SetCode
from .base import Answer

logger = logging.getLogger(__name__)

Box = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]


def box_around(center: Sequence[Fraction], radius: Fraction) -> Box:
  return (tuple(c - radius for c in center), tuple(c + radius for c in center))


def box_min_dist2(box: Box, x: Sequence[Fraction]) -> Fraction:
  """Squared distance from x to the closed box."""
  lo, hi = box
  total = Fraction(0)
  for l, h, c in zip(lo, hi, x):
    if c < l:
      total += (l - c) * (l - c)
    elif c > h:
      total += (c - h) * (c - h)
  return total


def box_max_dist2(box: Box, x: Sequence[Fraction]) -> Fraction:
  """Squared distance from x to the farthest corner of the box."""
  lo, hi = box
  return sum((max((l - c) * (l - c), (h - c) * (h - c)) for l, h, c in zip(lo, hi, x)), Fraction(0))


def box_inside_ball(box: Box, ball: Ball) -> bool:
  return box_max_dist2(box, ball.center) < ball.radius * ball.radius


def box_misses_closed_ball(box: Box, center: Sequence[Fraction], radius: Fraction) -> bool:
  return box_min_dist2(box, center) > radius * radius


def box_width(box: Box) -> Fraction:
  lo, hi = box
  return max(h - l for l, h in zip(lo, hi))


def split_box(box: Box) -> List[Box]:
  """The 2^n dyadic children of a box."""
  lo, hi = box
  mid = tuple((l + h) / 2 for l, h in zip(lo, hi))
  children = []
  for corner in itertools.product((0, 1), repeat=len(lo)):
    clo = tuple(lo[d] if bit == 0 else mid[d] for d, bit in enumerate(corner))
    chi = tuple(mid[d] if bit == 0 else hi[d] for d, bit in enumerate(corner))
    children.append((clo, chi))
  return children


def radius_class(r: Fraction) -> int:
  """The integer e with 2^e <= r < 2^(e+1)."""
  e = r.numerator.bit_length() - r.denominator.bit_length()
  while Fraction(2) ** e > r:
    e -= 1
  while Fraction(2) ** (e + 1) <= r:
    e += 1
  return e


class BallGrid:
  """Spatial hash of the member balls of a set code, one grid per radius class."""

  def __init__(self, balls: Iterable[Ball]):
    self.classes: Dict[int, Tuple[Fraction, Fraction, Dict[Tuple[int, ...], List[Ball]]]] = {}
    for ball in balls:
      e = radius_class(ball.radius)
      if e not in self.classes:
        self.classes[e] = (Fraction(2) ** (e + 1), Fraction(0), {})
      size, rmax, buckets = self.classes[e]
      key = tuple(floor(c / size) for c in ball.center)
      buckets.setdefault(key, []).append(ball)
      self.classes[e] = (size, max(rmax, ball.radius), buckets)

  def candidates(self, box: Box) -> Iterable[Ball]:
    """Balls whose center lies close enough to the box to contain it."""
    lo, hi = box
    width = box_width(box)
    for size, rmax, buckets in self.classes.values():
      if 2 * rmax <= width:
        continue
      ranges = [range(floor((l - size) / size), floor((h + size) / size) + 1) for l, h in zip(lo, hi)]
      for key in itertools.product(*ranges):
        yield from buckets.get(key, ())

  def box_inside(self, box: Box) -> bool:
    return any(box_inside_ball(box, b) for b in self.candidates(box))

  def point_inside(self, x: Sequence[Fraction]) -> bool:
    box = (tuple(x), tuple(x))
    return any(b.contains(x) for b in self.candidates(box))


def closed_region_in_balls(center: Sequence[Fraction], radius: Fraction, grid: BallGrid, depth: int) -> bool:
  """
  Decide, up to the given subdivision depth, that the closed ball
  (center, radius) lies in the union of the grid's open balls.

  A radius of 0 denotes the single point center.
  """
  if radius == 0:
    return grid.point_inside(center)
  stack = [(box_around(center, radius), 0)]
  while stack:
    box, level = stack.pop()
    if box_misses_closed_ball(box, center, radius):
      continue
    if grid.box_inside(box):
      continue
    if level >= depth:
      return False
    stack.extend((child, level + 1) for child in split_box(box))
  return True


def closed_ball_in_code(i: Ball, j: SetCode, fuel: int) -> Answer:
  """
  Semi-decide closed I_i contained in J_j.

  The bounding box of the closed ball is subdivided dyadically to depth
  fuel; every cell that meets the closed ball must sit strictly inside a
  single member ball.

  Args:
      i: The ball I_i
      j: The set code
      fuel: Subdivision depth

  Returns:
      Answer: YES when confirmed, UNKNOWN otherwise
  """
  result = closed_region_in_balls(i.center, i.radius, BallGrid(j.decoded), fuel)
  logger.debug(f"closed_ball_in_code at fuel {fuel}: {result}")
  return Answer.of(result)
