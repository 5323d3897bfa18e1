"""
Dovetailed search for the Certified Chain Cover Engine.

Step t of the search unpairs into (stage, fuel). Every candidate of the
stage is certified at that fuel and the first certified candidate, in
candidate order, becomes the witness. Certification may run on a joblib
pool (threads by default); the reduction always takes the first Yes in
candidate order, so the witness does not depend on the number of workers.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from joblib import Parallel, delayed

from ambient.codings import unpair
from ambient.types import Point, dist2
from geometry_oracle.exact import DEFAULT_SPIRAL_DEPTH_CAP
from geometry_oracle.fixtures import Fixture, FixtureError, LineAnchorHint
from geometry_oracle.presentation import fixture_presentation
from presentations.base import ComputablePointSeq, PresentedSet
from .candidates import CandidateGenerator
from .certify import line_formal_failure, line_oracle_failure, ray_formal_failure, ray_oracle_failure
from .tuples import SearchTuple, Witness

logger = logging.getLogger(__name__)

ANCHOR_PRECISION = 2
ANCHOR_CHECK_PRECISION = 8


class SearchBudgetExhausted(RuntimeError):
  """The caller-supplied step cap was reached without a certified tuple."""


def anchor_from_endpoint(endpoint: ComputablePointSeq) -> Point:
  """
  An anchor within distance 1 of the endpoint.

  The endpoint is approximated within 2^-2 and every coordinate is rounded
  to the nearest multiple of 1/4.
  """
  approx = endpoint(ANCHOR_PRECISION)
  return Point(tuple(Fraction(round(c * 4), 4) for c in approx.coords))


def anchor_near_endpoint(a: Point, endpoint: ComputablePointSeq) -> bool:
  """Exact sufficient test for d(a, f(0)) < 1 using one approximation."""
  approx = endpoint(ANCHOR_CHECK_PRECISION)
  bound = 1 - Fraction(1, 2 ** ANCHOR_CHECK_PRECISION)
  return dist2(a.coords, approx.coords) < bound * bound


@dataclass(frozen=True)
class SearchInputs:
  """
  Everything the search needs besides (n, k).

  Ray mode needs the endpoint; the anchor defaults to anchor_from_endpoint.
  Line mode needs the hint and always anchors at the hint's point.
  """

  mode: str
  presentation: PresentedSet
  endpoint: Optional[ComputablePointSeq] = None
  anchor: Optional[Point] = None
  hint: Optional[LineAnchorHint] = None

  def __post_init__(self):
    if self.mode not in ("ray", "line"):
      raise ValueError(f"unknown mode {self.mode!r}")
    if self.mode == "ray" and self.endpoint is None:
      raise ValueError("ray mode needs the endpoint")
    if self.mode == "line" and self.hint is None:
      raise ValueError("line mode needs a LineAnchorHint")

  @classmethod
  def from_fixture(
    cls,
    fx: Fixture,
    mode: Optional[str] = None,
    anchor: Optional[Point] = None,
    spiral_depth_cap: int = DEFAULT_SPIRAL_DEPTH_CAP,
  ) -> "SearchInputs":
    """
    Inputs for a ray or line fixture; the presentation covers curve and noise.

    Raises:
        FixtureError: If the fixture is not a ray or line of the requested mode
    """
    mode = mode or fx.mode
    if mode not in ("ray", "line") or fx.mode != mode:
      raise FixtureError(f"fixture {fx.id} of kind {fx.kind} cannot be searched in {mode} mode")
    presentation = fixture_presentation(fx, spiral_depth_cap=spiral_depth_cap)
    if mode == "ray":
      return cls(mode, presentation, endpoint=ComputablePointSeq.constant(fx.endpoint()), anchor=anchor)
    if fx.hint is None:
      raise FixtureError(f"line fixture {fx.id} has no anchors")
    return cls(mode, presentation, hint=fx.hint)

  def anchor_point(self) -> Point:
    if self.mode == "line":
      return self.hint.a
    if self.anchor is not None:
      return self.anchor
    return anchor_from_endpoint(self.endpoint)


@dataclass(frozen=True)
class SearchLimits:
  """Caps and knobs of one search."""

  stage_cap: int = 3
  step_budget: int = 4000
  prune_fuel: int = 20
  pure_naturals: bool = False
  workers: int = 1
  backend: str = "threading"

  @classmethod
  def from_config(cls, config: dict) -> "SearchLimits":
    section = config.get("chain_engine", {})
    workers = config.get("general", {}).get("processing", {}).get("max_workers", 1)
    return cls(
      stage_cap=int(section.get("stage_cap", cls.stage_cap)),
      step_budget=int(section.get("step_budget", cls.step_budget)),
      prune_fuel=int(section.get("prune_fuel", cls.prune_fuel)),
      pure_naturals=bool(section.get("pure_naturals", cls.pure_naturals)),
      workers=max(1, int(workers)),
      backend=str(section.get("parallel", {}).get("backend", cls.backend)),
    )


class ChainSearch:
  """
  One search for (mode, a, n, k).

  Formal failures do not depend on fuel, so they are computed once per
  candidate and remembered.
  """

  def __init__(self, inputs: SearchInputs, n: int, k: int, limits: Optional[SearchLimits] = None):
    if n < 0 or k < 0:
      raise ValueError(f"n and k must be naturals, got n={n}, k={k}")
    self.inputs = inputs
    self.n = n
    self.k = k
    self.limits = limits or SearchLimits()
    self.anchor = inputs.anchor_point()
    if inputs.mode == "ray" and not anchor_near_endpoint(self.anchor, inputs.endpoint):
      raise ValueError(f"anchor {self.anchor.format(',')} is not within distance 1 of the endpoint")
    self.generator = CandidateGenerator(
      inputs.mode,
      inputs.presentation,
      self.anchor.coords,
      n,
      k,
      endpoint=inputs.endpoint,
      hint=inputs.hint,
      prune_fuel=self.limits.prune_fuel,
      pure_naturals=self.limits.pure_naturals,
    )
    self._formal: Dict[int, List[Optional[int]]] = {}
    self.steps = 0

  def _formal_failures(self, stage: int) -> List[Optional[int]]:
    if stage not in self._formal:
      failures = []
      for t in self.generator.stage(stage):
        try:
          if self.inputs.mode == "ray":
            failures.append(ray_formal_failure(t, self.anchor.coords))
          else:
            failures.append(line_formal_failure(t, self.inputs.hint))
        except ValueError as e:
          # decoded naturals can name segments that do not exist
          logger.debug(f"Candidate rejected: {e}")
          failures.append(0)
      self._formal[stage] = failures
    return self._formal[stage]

  def _oracle_failure(self, t: SearchTuple, fuel: int) -> Optional[int]:
    inputs = self.inputs
    if inputs.mode == "ray":
      return ray_oracle_failure(t, inputs.presentation, inputs.endpoint, self.anchor.coords, fuel)
    return line_oracle_failure(t, inputs.presentation, inputs.hint, fuel)

  def _certify_step(self, candidates: List[SearchTuple], fuel: int) -> Optional[int]:
    """Position of the first candidate certified at this fuel."""
    if not candidates:
      return None
    workers = self.limits.workers
    if workers <= 1 or len(candidates) == 1:
      for idx, t in enumerate(candidates):
        if self._oracle_failure(t, fuel) is None:
          return idx
      return None
    results = Parallel(n_jobs=workers, backend=self.limits.backend)(
      delayed(self._oracle_failure)(t, fuel) for t in candidates
    )
    for idx, failed in enumerate(results):
      if failed is None:
        return idx
    return None

  def run(self) -> Witness:
    """
    Dovetail (stage, fuel) until a tuple certifies.

    Returns:
        Witness: The first certified tuple in canonical order

    Raises:
        SearchBudgetExhausted: When the step budget is reached
    """
    limits = self.limits
    warn_at = (limits.step_budget * 9) // 10
    logger.info(
      f"Searching {self.inputs.mode} cover at a={self.anchor.format(',')}, n={self.n}, k={self.k}"
    )
    for step in itertools.count():
      self.steps = step
      if step >= limits.step_budget:
        logger.error(f"Search budget exhausted after {step} steps")
        raise SearchBudgetExhausted(f"search budget exhausted after {step} steps")
      if step == warn_at and step > 0:
        logger.warning(f"Search has used {step} of {limits.step_budget} steps")
      stage, fuel = unpair(step)
      if stage > limits.stage_cap:
        continue
      candidates = self.generator.stage(stage)
      failures = self._formal_failures(stage)
      live = [t for t, failed in zip(candidates, failures) if failed is None]
      found = self._certify_step(live, fuel)
      if found is not None:
        witness = Witness(live[found], fuel, stage)
        logger.info(f"Witness found at step {step} (stage {stage}, fuel {fuel}): m={witness.tuple.m}")
        return witness
    raise SearchBudgetExhausted("unreachable")


def search(mode: str, inputs: SearchInputs, n: int, k: int, limits: Optional[SearchLimits] = None) -> Witness:
  """
  Search for a certified tuple.

  Args:
      mode: "ray" or "line"; must match inputs.mode
      inputs: Presentation with endpoint or hint
      n: Radius of the closed ball to cover
      k: Mesh exponent
      limits: Stage cap, step budget and workers

  Returns:
      Witness: The first certified tuple in canonical order

  Raises:
      ValueError: For inconsistent inputs
      SearchBudgetExhausted: When the step budget is reached
  """
  if mode != inputs.mode:
    raise ValueError(f"mode {mode!r} does not match inputs for {inputs.mode!r}")
  return ChainSearch(inputs, n, k, limits).run()


def propose_candidates(inputs: SearchInputs, n: int, k: int, stage: int, limits: Optional[SearchLimits] = None) -> List[SearchTuple]:
  """The candidate list of one stage, as the search sees it."""
  limits = limits or SearchLimits()
  a = inputs.anchor_point()
  generator = CandidateGenerator(
    inputs.mode,
    inputs.presentation,
    a.coords,
    n,
    k,
    endpoint=inputs.endpoint,
    hint=inputs.hint,
    prune_fuel=limits.prune_fuel,
    pure_naturals=limits.pure_naturals,
  )
  return generator.stage(stage)
