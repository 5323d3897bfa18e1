"""
Enumeration of intersecting balls for the Certified Chain Cover Engine.

Rounds t = 0, 1, 2, ... unpair into (n, k). Each round runs one search
and then scans the ball indices below (t + 1) * index_step against the
certified links of every witness found so far. A ball index is emitted the
first time one of those links is formally contained in it. A numpy float
pass only narrows the exact checks; it never decides an emission.
"""

import logging
from dataclasses import replace
from typing import Iterator, List, Optional, Set, Tuple

import numpy as np
from tqdm import tqdm

from ambient.codings import decode_ball, unpair
from ambient.types import SetCode
from chain_engine.search import ChainSearch, SearchBudgetExhausted, SearchInputs, SearchLimits
from formal.predicates import formally_contained

logger = logging.getLogger(__name__)

# Absolute slack of the float pass; it only has to avoid false rejections
FLOAT_SLACK = 1e-9


class _LinkArrays:
  """Float copies of one link for the numpy pass."""

  def __init__(self, link: SetCode):
    self.link = link
    self.scanned = 0
    balls = link.decoded
    self.centers = np.array([[float(c) for c in b.center] for b in balls], dtype=float)
    self.radii = np.array([float(b.radius) for b in balls], dtype=float)

  def maybe_inside(self, centers: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Mask of window balls that may formally contain the link."""
    gaps = np.linalg.norm(centers[:, None, :] - self.centers[None, :, :], axis=2)
    reach = (gaps + self.radii[None, :]).max(axis=1)
    return reach < radii + FLOAT_SLACK


class _Window:
  """Decoded ball indices [0, size) as exact values and float arrays."""

  def __init__(self):
    self.size = 0
    self.centers = np.zeros((0, 0), dtype=float)
    self.radii = np.zeros(0, dtype=float)

  def grow(self, size: int) -> None:
    if size <= self.size:
      return
    fresh = [decode_ball(i) for i in range(self.size, size)]
    centers = np.array([[float(c) for c in center] for center, _ in fresh], dtype=float)
    radii = np.array([float(r) for _, r in fresh], dtype=float)
    self.centers = centers if self.size == 0 else np.vstack([self.centers, centers])
    self.radii = np.concatenate([self.radii, radii])
    self.size = size


def _round_params(mode: str, t: int) -> Tuple[int, int]:
  n, k = unpair(t)
  return (n + 1, k) if mode == "line" else (n, k)


def enumerate_intersecting(
  mode: str,
  inputs: SearchInputs,
  limits: Optional[SearchLimits] = None,
  index_step: int = 500,
  budget: int = 1000000,
  progress: bool = False,
) -> Iterator[int]:
  """
  Stream ball indices whose balls meet the presented ray or line.

  Every emitted ball formally contains a certified link, so it meets the
  set. Emissions are unique and, within a round, increasing.

  Args:
      mode: "ray" or "line"
      inputs: Presentation with endpoint or hint
      limits: Per-search caps; each search also stops at the remaining budget
      index_step: Growth of the scanned index window per round
      budget: Total work units: search steps plus scanned indices

  Yields:
      int: Ball indices
  """
  if mode != inputs.mode:
    raise ValueError(f"mode {mode!r} does not match inputs for {inputs.mode!r}")
  if index_step < 1:
    raise ValueError(f"index_step must be positive, got {index_step}")
  limits = limits or SearchLimits()
  remaining = budget
  emitted: Set[int] = set()
  links: List[_LinkArrays] = []
  segments: Set[Tuple[int, ...]] = set()
  window = _Window()
  t = 0
  while remaining > 0:
    n, k = _round_params(mode, t)
    cap = replace(limits, step_budget=min(limits.step_budget, remaining))
    runner = ChainSearch(inputs, n, k, cap)
    try:
      witness = runner.run()
      remaining -= runner.steps + 1
      for link in witness.links:
        key = link.balls
        if key not in segments:
          segments.add(key)
          links.append(_LinkArrays(link))
    except SearchBudgetExhausted:
      remaining -= cap.step_budget
      logger.warning(f"Round {t} (n={n}, k={k}) found no witness within {cap.step_budget} steps")
    window.grow((t + 1) * index_step)
    pending = [i for i in range(window.size) if i not in emitted]
    remaining -= len(pending)
    found: List[int] = []
    scan = tqdm(links, desc=f"round {t}", disable=not progress, leave=False)
    for arrays in scan:
      if not pending:
        break
      # indices below arrays.scanned were already rejected for this link
      fresh = [i for i in pending if i >= arrays.scanned]
      arrays.scanned = window.size
      if not fresh:
        continue
      idx = np.array(fresh, dtype=np.int64)
      mask = arrays.maybe_inside(window.centers[idx], window.radii[idx])
      hits = set()
      for i in idx[mask].tolist():
        center, radius = decode_ball(i)
        if formally_contained(arrays.link, center, radius):
          hits.add(i)
      if hits:
        found.extend(hits)
        pending = [i for i in pending if i not in hits]
    for i in sorted(found):
      emitted.add(i)
      yield i
    logger.debug(f"Round {t} (n={n}, k={k}) emitted {len(found)} balls, {remaining} budget left")
    t += 1
  logger.info(f"Enumeration budget spent after {t} rounds, {len(emitted)} balls emitted")


def first_emissions(
  mode: str,
  inputs: SearchInputs,
  limit: int,
  limits: Optional[SearchLimits] = None,
  index_step: int = 500,
  budget: int = 1000000,
  progress: bool = False,
) -> List[int]:
  """The first `limit` emissions (fewer when the budget runs out)."""
  out: List[int] = []
  if limit <= 0:
    return out
  for i in enumerate_intersecting(mode, inputs, limits, index_step, budget, progress):
    out.append(i)
    if len(out) >= limit:
      break
  return out
