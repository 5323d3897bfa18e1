"""
Candidate chains for the Certified Chain Cover Engine.

Stage s proposes chains built from the dyadic grid of level
K + 1 + s, where K is k for rays and k + k0 + 3 for lines. Cells of the
grid around B̂(a, m + 1) are kept unless the presentation certifies them
empty; cells are joined by king adjacency, and the component that holds
the seeds is threaded into links by breadth-first layers. All other
components are absorbed into u, at the coarsest level where they split off
from the seeds. Two cells that are not adjacent have
formally disjoint balls, so the layers always form a formal chain.

Certification alone decides soundness; this module only has to propose
good candidates.
"""

import itertools
import logging
from collections import deque
from fractions import Fraction
from math import ceil, floor
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from ambient.codings import get_dimension, unpair
from ambient.types import Ball, SetCode
from formal.chains import FormalChain
from formal.distance import sqrt_upper
from formal.predicates import balls_formally_disjoint
from geometry_oracle.arcs import contained_span
from geometry_oracle.fixtures import LineAnchorHint
from presentations.base import ComputablePointSeq, PresentedSet
from presentations.subdivision import Box, box_around, box_min_dist2
from .tuples import LineTuple, RayTuple, SearchTuple

logger = logging.getLogger(__name__)

Cell = Tuple[int, ...]
# a cell together with its level
Placed = Tuple[Cell, int]


def cell_box(z: Cell, level: int) -> Box:
  g = Fraction(1, 2 ** level)
  return tuple(c * g for c in z), tuple((c + 1) * g for c in z)


def cell_radius(level: int) -> Fraction:
  """Radius of the ball around a cell: above its half-diagonal, below its side."""
  n = get_dimension()
  g = Fraction(1, 2 ** level)
  if n == 2:
    return 3 * g / 4
  return (sqrt_upper(Fraction(n), 16) / 2 + Fraction(1, 32)) * g


def cell_ball(z: Cell, level: int) -> Ball:
  g = Fraction(1, 2 ** level)
  return Ball(tuple((c + Fraction(1, 2)) * g for c in z), cell_radius(level))


def _neighbours(z: Cell) -> Iterable[Cell]:
  for offset in itertools.product((-1, 0, 1), repeat=len(z)):
    if any(offset):
      yield tuple(c + o for c, o in zip(z, offset))


def _bfs(cells: Set[Cell], sources: Iterable[Cell]) -> Dict[Cell, int]:
  dist: Dict[Cell, int] = {}
  queue = deque()
  for s in sorted(set(sources)):
    if s in cells and s not in dist:
      dist[s] = 0
      queue.append(s)
  while queue:
    z = queue.popleft()
    for w in _neighbours(z):
      if w in cells and w not in dist:
        dist[w] = dist[z] + 1
        queue.append(w)
  return dist


def _layers(dist: Dict[Cell, int], level: int) -> List[SetCode]:
  depth = max(dist.values())
  buckets: List[List[Ball]] = [[] for _ in range(depth + 1)]
  for z in sorted(dist):
    buckets[dist[z]].append(cell_ball(z, level))
  return [SetCode.from_balls(bucket) for bucket in buckets]


class CandidateGenerator:
  """
  Proposes search tuples stage by stage for one (mode, a, n, k).

  Stage lists are cached; the same stage always yields the same list.
  """

  def __init__(
    self,
    mode: str,
    S: PresentedSet,
    a: Sequence[Fraction],
    n: int,
    k: int,
    endpoint: Optional[ComputablePointSeq] = None,
    hint: Optional[LineAnchorHint] = None,
    prune_fuel: int = 20,
    pure_naturals: bool = False,
  ):
    if mode not in ("ray", "line"):
      raise ValueError(f"unknown mode {mode!r}")
    if mode == "ray" and endpoint is None:
      raise ValueError("ray mode needs the endpoint")
    if mode == "line" and hint is None:
      raise ValueError("line mode needs a LineAnchorHint")
    if get_dimension() > 3:
      raise ValueError("dyadic candidates support dimension at most 3")
    self.mode = mode
    self.S = S
    self.a = tuple(Fraction(c) for c in a)
    self.n = n
    self.k = k
    self.endpoint = endpoint
    self.hint = hint
    self.prune_fuel = prune_fuel
    self.pure_naturals = pure_naturals
    self.base = k if mode == "ray" else k + hint.k0 + 3
    self._stages: Dict[int, List[SearchTuple]] = {}
    self._cells: Dict[Placed, Optional[PresentedSet]] = {}

  def level(self, stage: int) -> int:
    return self.base + 1 + stage

  def stage(self, s: int) -> List[SearchTuple]:
    if s not in self._stages:
      if self.pure_naturals:
        self._stages[s] = self._natural_stage(s)
      else:
        self._stages[s] = self._dyadic_stage(s)
      logger.info(f"Stage {s}: {len(self._stages[s])} candidates")
    return self._stages[s]

  def _natural_stage(self, s: int) -> List[SearchTuple]:
    """Tuples decoded from the naturals below 2^(s + 4)."""
    out: List[SearchTuple] = []
    for t in range(2 ** (s + 4)):
      m, rest = unpair(t)
      l, rest = unpair(rest)
      p, rest = unpair(rest)
      if self.mode == "ray":
        out.append(RayTuple(self.n, self.k, m, FormalChain.from_code(l), p, SetCode.from_code(rest)))
      else:
        q, rest = unpair(rest)
        e, u = unpair(rest)
        out.append(LineTuple(self.n, self.k, m, FormalChain.from_code(l), p, q, e, SetCode.from_code(u)))
    return out

  def _cell_presentation(self, z: Cell, level: int, S: PresentedSet) -> Optional[PresentedSet]:
    """
    The presentation localized to the cell's ball, or None once that ball
    is certified to miss S.

    Verdicts are remembered per (cell, level) across stages. A child ball
    lies inside its parent's ball, so children of an empty cell are never
    asked and S is always the parent's localized presentation.
    """
    key = (z, level)
    if key not in self._cells:
      ball = cell_ball(z, level)
      if S.misses(ball, self.prune_fuel):
        self._cells[key] = None
      else:
        self._cells[key] = S.localize(box_around(ball.center, ball.radius))
    return self._cells[key]

  def _seeds(self, cells: Iterable[Cell], level: int, final: int) -> List[Cell]:
    """
    Cells the chain must start from: near the endpoint for rays, touching
    one of the hint balls A, B, C for lines. An ancestor of a seed is a seed.
    """
    if self.mode == "ray":
      approx, tol = self._endpoint_window(final)
      return [z for z in cells if box_min_dist2(cell_box(z, level), approx) <= tol * tol]
    anchors = (self.hint.ball_a, self.hint.ball_b, self.hint.ball_c)
    return [z for z in cells if any(not balls_formally_disjoint(cell_ball(z, level), b) for b in anchors)]

  def _endpoint_window(self, level: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
    precision = level + 6
    return self.endpoint(precision).coords, Fraction(1, 2 ** precision)

  def _grid(self, level: int, radius: Fraction) -> Tuple[Set[Cell], List[Placed]]:
    """
    Cells of the level meeting B̂(a, radius) that are not certified empty,
    and the coarser cells set aside on the way down.

    Only the component of the seeds is refined. A kept cell outside it is set
    aside at its own level: king paths of children project to king paths of
    parents, so none of its descendants can reach the seeds later.
    """
    lo = [floor(c - radius) for c in self.a]
    hi = [ceil(c + radius) for c in self.a]
    frontier = [(tuple(z), self.S) for z in itertools.product(*[range(l, h) for l, h in zip(lo, hi)])]
    r2 = radius * radius
    aside: List[Placed] = []
    for current in range(level + 1):
      kept = {}
      for z, S in frontier:
        if box_min_dist2(cell_box(z, current), self.a) > r2:
          continue
        local = self._cell_presentation(z, current, S)
        if local is not None:
          kept[z] = local
      if current == level:
        return set(kept), aside
      reached = set(_bfs(set(kept), self._seeds(kept, current, level)))
      aside.extend((z, current) for z in sorted(set(kept) - reached))
      frontier = [
        (tuple(2 * c + bit for c, bit in zip(z, bits)), kept[z])
        for z in sorted(reached)
        for bits in itertools.product((0, 1), repeat=len(z))
      ]
    return set(), aside

  def _far_ball(self, m: int) -> Ball:
    center = (self.a[0] + m + 4,) + self.a[1:]
    return Ball(center, Fraction(1, 2))

  def _absorb(self, cells: Iterable[Cell], level: int, aside: Sequence[Placed], m: int) -> SetCode:
    """u: the fine cells off the chain plus the set-aside cells within m + 1 of a."""
    balls = [cell_ball(z, level) for z in sorted(cells)]
    bound = (m + 1) ** 2
    balls.extend(cell_ball(z, c) for z, c in aside if box_min_dist2(cell_box(z, c), self.a) <= bound)
    if not balls:
      balls = [self._far_ball(m)]
    return SetCode.from_balls(balls)

  def _components(self, cells: Set[Cell], seeds: Iterable[Cell]) -> Tuple[Set[Cell], Set[Cell]]:
    reached = set(_bfs(cells, seeds))
    return reached, cells - reached

  def _dyadic_stage(self, s: int) -> List[SearchTuple]:
    level = self.level(s)
    top = self.n + 1 + s
    grid, aside = self._grid(level, Fraction(top + 1))
    out: List[SearchTuple] = []
    for m in range(self.n + 1, top + 1):
      region = {z for z in grid if box_min_dist2(cell_box(z, level), self.a) <= (m + 1) ** 2}
      if not region:
        continue
      if self.mode == "ray":
        candidate = self._ray_tuple(region, level, aside, m)
      else:
        candidate = self._line_tuple(region, level, aside, m)
      if candidate is not None:
        out.append(candidate)
    return out

  def _ray_tuple(self, region: Set[Cell], level: int, aside: Sequence[Placed], m: int) -> Optional[RayTuple]:
    seeds = self._seeds(region, level, level)
    if not seeds:
      return None
    dist = _bfs(region, seeds)
    chain = FormalChain(tuple(_layers(dist, level)))
    span = contained_span(chain, self.a, Fraction(m), 0)
    if span is None:
      return None
    u = self._absorb(region - set(dist), level, aside, m)
    return RayTuple(self.n, self.k, m, chain, span[1], u)

  def _line_tuple(self, region: Set[Cell], level: int, aside: Sequence[Placed], m: int) -> Optional[LineTuple]:
    hint = self.hint
    A, B, C = hint.ball_a, hint.ball_b, hint.ball_c

    def touching(ball: Ball) -> List[Cell]:
      return [z for z in region if not balls_formally_disjoint(cell_ball(z, level), ball)]

    seeds_a, seeds_b, seeds_c = touching(A), touching(B), touching(C)
    if not (seeds_a and seeds_b and seeds_c):
      return None
    component, rest = self._components(region, seeds_a + seeds_b + seeds_c)
    dist_a, dist_b = _bfs(component, seeds_a), _bfs(component, seeds_b)
    negative = [z for z in component if z in dist_a and dist_a[z] < dist_b.get(z, len(component) + 1)]
    if not negative:
      return None
    end = max(sorted(negative), key=lambda z: dist_a[z])
    dist = _bfs(component, [end])
    chain = FormalChain(tuple(_layers(dist, level)))
    e = min(dist[z] for z in seeds_c)
    span = contained_span(chain, hint.a.coords, Fraction(m), e)
    if span is None:
      return None
    p, q = span
    u = self._absorb(rest, level, aside, m)
    return LineTuple(self.n, self.k, m, chain, p, q, e, u)
