"""
Verdicts for the Certified Chain Cover Engine.

Checks in this module consult exact fixture geometry only. Formal
predicates and presentations are never used, so a verdict does not depend
on the code it checks.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from ambient.types import Ball, Point, SetCode, format_rational
from geometry_oracle.exact import DEFAULT_DEPTH_CAP, DEFAULT_SPIRAL_DEPTH_CAP, exact_cover_check, exact_intersects, union_diameter_lt
from geometry_oracle.fixtures import Fixture
from geometry_oracle.pieces import UndecidedAtCap

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
  """Outcome of one check; a FAIL carries a reproducible counterexample."""

  check: str
  fixture_id: str
  params: Dict[str, Any] = field(default_factory=dict)
  result: str = PASS
  counterexample: Optional[Dict[str, Any]] = None

  @property
  def passed(self) -> bool:
    return self.result == PASS

  def to_json(self) -> str:
    return json.dumps(asdict(self), sort_keys=True)


def _ball_info(ball: Ball) -> Dict[str, str]:
  return {
    "ball_index": str(ball.index),
    "center": Point(ball.center).format(";"),
    "radius": format_rational(ball.radius),
  }


def verify_links(
  links: Sequence[SetCode],
  fx: Fixture,
  a: Sequence[Fraction],
  n: int,
  mesh: Fraction,
  params: Optional[Dict[str, Any]] = None,
  depth_cap: int = DEFAULT_DEPTH_CAP,
  spiral_depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
) -> Verdict:
  """
  Check meet, cover and mesh for a list of links.

  Args:
      links: The links, in order
      fx: The fixture drawn
      a: Anchor
      n: Anchor radius
      mesh: Bound on the diameter of every link
      params: Parameters recorded in the verdict
      depth_cap: Refinement cap of the exact cover check
      spiral_depth_cap: Refinement cap when a spiral piece is tested against one ball

  Returns:
      Verdict: PASS iff every link meets the curve, the links cover the
      curve within B̂(a, n) and every link is smaller than the mesh
  """
  params = dict(params or {})
  params.setdefault("n", n)
  params.setdefault("mesh", format_rational(mesh))

  def verdict(result: str, counterexample: Optional[Dict[str, Any]] = None) -> Verdict:
    return Verdict("cover", fx.id, params, result, counterexample)

  try:
    for ordinal, link in enumerate(links):
      balls = link.decoded
      if not any(exact_intersects(fx, (b.center, b.radius), depth_cap=spiral_depth_cap) for b in balls):
        info = _ball_info(balls[0])
        info.update({"link_ordinal": ordinal, "reason": "link misses the curve"})
        return verdict(FAIL, info)
      if not union_diameter_lt(balls, mesh):
        info = _ball_info(balls[0])
        info.update({"link_ordinal": ordinal, "reason": "link diameter not below the mesh"})
        return verdict(FAIL, info)
    all_balls = [b for link in links for b in link.decoded]
    if not exact_cover_check(fx, a, Fraction(n), all_balls, depth_cap=depth_cap):
      return verdict(FAIL, {"anchor": Point(tuple(a)).format(";"), "n": n,
                            "reason": "links do not cover the curve in the anchor ball"})
  except UndecidedAtCap as e:
    logger.warning(f"Cover check on {fx.id} undecided: {e}")
    return verdict(UNDECIDED, {"reason": str(e)})
  return verdict(PASS)


def verify_cover(
  c,
  fx: Fixture,
  depth_cap: int = DEFAULT_DEPTH_CAP,
  spiral_depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
) -> Verdict:
  """
  Check a CertifiedCover against its fixture.

  Returns:
      Verdict: PASS iff meet, cover and mesh all hold exactly
  """
  params = {"mode": c.mode, "n": c.n, "k": c.k, "fuel": c.witness.fuel, "stage": c.witness.stage}
  return verify_links(c.links, fx, c.anchor.coords, c.n, c.mesh, params, depth_cap, spiral_depth_cap)


def verify_stream(
  emissions: Sequence[int],
  fx: Fixture,
  witness_list: Sequence[int],
  budget: int,
  depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
) -> Verdict:
  """
  Check an emission list: every emitted ball meets the curve, and every
  witness index was emitted.

  Returns:
      Verdict: PASS iff both hold; soundness failures are reported first
  """
  params = {"budget": budget, "emissions": len(emissions), "witnesses": len(witness_list)}
  try:
    for ordinal, i in enumerate(emissions):
      ball = Ball.from_index(i)
      if not exact_intersects(fx, (ball.center, ball.radius), depth_cap=depth_cap):
        info = _ball_info(ball)
        info.update({"emission": ordinal, "reason": "emitted ball misses the curve"})
        return Verdict("stream", fx.id, params, FAIL, info)
  except UndecidedAtCap as e:
    logger.warning(f"Stream check on {fx.id} undecided: {e}")
    return Verdict("stream", fx.id, params, UNDECIDED, {"reason": str(e)})
  seen = set(emissions)
  missing = [i for i in witness_list if i not in seen]
  if missing:
    info = _ball_info(Ball.from_index(missing[0]))
    info.update({"missing": len(missing), "reason": "witness index not emitted within the budget"})
    return Verdict("stream", fx.id, params, FAIL, info)
  return Verdict("stream", fx.id, params, PASS)


def write_verdicts(verdicts: Iterable[Verdict], path: Union[str, Path]) -> Path:
  """Write verdicts as JSON lines."""
  path = Path(path)
  try:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
      for v in verdicts:
        f.write(v.to_json() + "\n")
  except OSError as e:
    logger.error(f"Error writing verdicts {path}: {e}")
    raise
  return path


def aggregate_status(verdicts: Iterable[Verdict]) -> int:
  """0 when all pass, 1 when any fails, 2 when none fails but one is undecided."""
  results = [v.result for v in verdicts]
  if FAIL in results:
    return 1
  if UNDECIDED in results:
    return 2
  return 0
