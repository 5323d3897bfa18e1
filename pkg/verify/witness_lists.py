"""
Witness lists for the Certified Chain Cover Engine.

A witness list holds the ball indices below a scan limit whose shrunken
closed ball B̂(λ, ρ - slack) still meets the curve. These balls meet the
curve with room to spare, so a complete enumeration must emit them.
"""

import logging
from fractions import Fraction
from typing import List

import numpy as np
from tqdm import tqdm

from ambient.codings import decode_ball
from geometry_oracle.exact import DEFAULT_SPIRAL_DEPTH_CAP, exact_intersects
from geometry_oracle.fixtures import Fixture

logger = logging.getLogger(__name__)


def generate_witness_list(
  fx: Fixture,
  scan: int = 5000,
  slack: Fraction = Fraction(1, 8),
  depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
  progress: bool = False,
) -> List[int]:
  """
  Scan ball indices [0, scan) for balls meeting the curve with slack.

  Args:
      fx: The fixture
      scan: Number of canonical indices to scan
      slack: Radius margin
      depth_cap: Refinement cap for spiral pieces

  Returns:
      List[int]: Increasing ball indices

  Raises:
      ValueError: If slack is negative or scan is negative
      UndecidedAtCap: If a spiral piece stays undecided at the cap
  """
  slack = Fraction(slack)
  if slack < 0 or scan < 0:
    raise ValueError(f"scan and slack must be nonnegative, got scan={scan}, slack={slack}")
  balls = [decode_ball(i) for i in range(scan)]
  radii = np.array([float(r) for _, r in balls], dtype=float)
  # float pass only skips radii far below the slack
  candidates = np.nonzero(radii > float(slack) - 1e-9)[0].tolist()
  out: List[int] = []
  for i in tqdm(candidates, desc=f"witnesses {fx.id}", disable=not progress):
    center, radius = balls[i]
    shrunk = radius - slack
    if shrunk <= 0:
      continue
    if exact_intersects(fx, (center, shrunk), closed=True, depth_cap=depth_cap):
      out.append(i)
  logger.info(f"Witness list for {fx.id}: {len(out)} of {scan} indices")
  return out
