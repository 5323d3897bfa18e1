"""
Tests for tuple certification, candidate generation and the dovetailed search.
"""

from dataclasses import replace
from fractions import Fraction

import pytest

from ambient.codings import set_dimension
from ambient.types import Ball, Point, SetCode
from chain_engine import (
  CandidateGenerator,
  ChainSearch,
  LineTuple,
  RayTuple,
  SearchBudgetExhausted,
  SearchInputs,
  SearchLimits,
  anchor_from_endpoint,
  anchor_near_endpoint,
  cell_ball,
  cell_radius,
  line_formal_failure,
  propose_candidates,
  ray_certify,
  ray_first_failure,
  ray_formal_failure,
  search,
)
from formal.predicates import balls_formally_disjoint
from geometry_oracle import FixtureError, chain_for_arc, contained_span
from geometry_oracle.presentation import fixture_presentation
from presentations.base import ComputablePointSeq
from verify.verdicts import verify_links

ORIGIN = (Fraction(0), Fraction(0))
FAR = SetCode.from_balls([Ball((10, 0), Fraction(1, 2))])


@pytest.fixture
def ray_setup(load):
  """A hand-built ray tuple along the axis ray, certified at m = 2."""
  fx = load("axis-ray")
  chain = chain_for_arc(fx.param, Fraction(1), Fraction(0), Fraction(3))
  _, p = contained_span(chain, ORIGIN, Fraction(2), 0)
  t = RayTuple(n=0, k=0, m=2, chain=chain, p=p, u=FAR)
  endpoint = ComputablePointSeq.constant(fx.endpoint())
  return fx, fixture_presentation(fx), endpoint, t


class TestRayCertification:
  """The ray conditions on a hand-built tuple."""

  def test_formal_conditions_hold(self, ray_setup):
    _, _, _, t = ray_setup
    assert ray_formal_failure(t, ORIGIN) is None

  def test_certifies_with_enough_fuel(self, ray_setup):
    _, S, endpoint, t = ray_setup
    assert ray_first_failure(t, S, endpoint, ORIGIN, 16) is None
    assert ray_certify(t, S, endpoint, ORIGIN, 16)

  def test_endpoint_needs_fuel(self, ray_setup):
    _, S, endpoint, t = ray_setup
    assert ray_first_failure(t, S, endpoint, ORIGIN, 0) == 3

  def test_p_must_precede_last(self, ray_setup):
    _, _, _, t = ray_setup
    assert ray_formal_failure(replace(t, p=t.chain.last), ORIGIN) == 7
    assert ray_formal_failure(replace(t, m=0), ORIGIN) == 7

  def test_mesh(self, ray_setup):
    _, _, _, t = ray_setup
    assert ray_formal_failure(replace(t, k=3), ORIGIN) == 8

  def test_u_must_avoid_chain(self, ray_setup):
    _, _, _, t = ray_setup
    overlapping = SetCode.from_balls([t.chain[0].decoded[0]])
    assert ray_formal_failure(replace(t, u=overlapping), ORIGIN) == 2

  def test_segment_must_fit_in_anchor_ball(self, ray_setup):
    _, _, _, t = ray_setup
    assert ray_formal_failure(replace(t, m=1, p=t.chain.last - 1), ORIGIN) == 6

  def test_certified_segment_is_a_true_cover(self, ray_setup):
    fx, _, _, t = ray_setup
    verdict = verify_links(t.segment(), fx, ORIGIN, t.n, Fraction(1))
    assert verdict.passed


class TestLineCertification:
  """Fuel-independent line conditions."""

  def test_order_of_indices(self, load):
    fx = load("axis-line")
    chain = chain_for_arc(load("segment").param, Fraction(1))
    t = LineTuple(n=1, k=0, m=2, chain=chain, p=1, q=2, e=1, u=FAR)
    assert line_formal_failure(t, fx.hint) == 6


class TestCandidates:
  """Dyadic cells and candidate stages."""

  def test_cell_balls(self):
    assert cell_radius(0) == Fraction(3, 4)
    assert cell_ball((0, 0), 1) == Ball((Fraction(1, 4), Fraction(1, 4)), Fraction(3, 8))
    # adjacent cells overlap, cells two apart are formally disjoint
    assert not balls_formally_disjoint(cell_ball((0, 0), 2), cell_ball((1, 1), 2))
    assert balls_formally_disjoint(cell_ball((0, 0), 2), cell_ball((2, 0), 2))
    assert balls_formally_disjoint(cell_ball((0, 0), 2), cell_ball((2, 2), 2))

  def test_validation(self, load):
    fx = load("axis-ray")
    S = fixture_presentation(fx)
    with pytest.raises(ValueError):
      CandidateGenerator("loop", S, ORIGIN, 0, 0)
    with pytest.raises(ValueError):
      CandidateGenerator("ray", S, ORIGIN, 0, 0)
    with pytest.raises(ValueError):
      CandidateGenerator("line", S, ORIGIN, 0, 0)

  def test_dimension_cap(self, load):
    endpoint = ComputablePointSeq.constant(load("axis-ray").endpoint())
    set_dimension(4)
    with pytest.raises(ValueError, match="dimension"):
      CandidateGenerator("ray", None, (0, 0, 0, 0), 0, 0, endpoint=endpoint)

  def test_stages_are_deterministic(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    first = propose_candidates(inputs, 0, 0, 1)
    second = propose_candidates(inputs, 0, 0, 1)
    assert first
    assert first == second
    assert all(t.m >= 1 for t in first)

  def test_candidate_chains_are_formal(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    for t in propose_candidates(inputs, 0, 0, 1):
      assert ray_formal_failure(t, ORIGIN) is None

  def test_noise_is_set_aside_coarsely(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray-noise"))
    candidates = propose_candidates(inputs, 0, 0, 2)
    assert candidates
    widest = max(candidates, key=lambda t: t.m)
    assert any(b.radius == cell_radius(0) for b in widest.u.decoded)
    for t in candidates:
      assert ray_formal_failure(t, ORIGIN) is None

  def test_pure_naturals_stage(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    limits = SearchLimits(pure_naturals=True)
    assert len(propose_candidates(inputs, 0, 0, 0, limits)) == 16


class TestSearchInputs:
  """Inputs, anchors and limits."""

  def test_non_ray_fixture(self, load):
    with pytest.raises(FixtureError):
      SearchInputs.from_fixture(load("segment"))
    with pytest.raises(FixtureError):
      SearchInputs.from_fixture(load("axis-ray"), mode="line")

  def test_ray_needs_endpoint(self, load):
    with pytest.raises(ValueError):
      SearchInputs("ray", fixture_presentation(load("axis-ray")))

  def test_spiral_depth_cap_reaches_presentation(self, load):
    inputs = SearchInputs.from_fixture(load("quarter-spiral-ray"), spiral_depth_cap=7)
    assert inputs.presentation.spiral_depth_cap == 7

  def test_anchor_rounding(self):
    endpoint = ComputablePointSeq.constant(Point.of("1/3", 0))
    assert anchor_from_endpoint(endpoint) == Point.of("1/4", 0)
    origin = ComputablePointSeq.constant(Point.of(0, 0))
    assert anchor_near_endpoint(Point.of("1/2", 0), origin)
    assert not anchor_near_endpoint(Point.of(1, 0), origin)

  def test_far_anchor_rejected(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"), anchor=Point.of(2, 0))
    with pytest.raises(ValueError, match="within distance 1"):
      ChainSearch(inputs, 0, 0)

  def test_limits_from_config(self, config):
    config["chain_engine"]["stage_cap"] = 2
    config["general"]["processing"]["max_workers"] = 3
    limits = SearchLimits.from_config(config)
    assert limits.stage_cap == 2
    assert limits.workers == 3
    assert limits.step_budget == 4000
    assert limits.backend == "threading"

  def test_backend_from_config(self, config):
    config["chain_engine"]["parallel"] = {"backend": "loky"}
    assert SearchLimits.from_config(config).backend == "loky"


class TestSearch:
  """Desk-scale searches on the fixture corpus."""

  def test_budget_exhaustion(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    with pytest.raises(SearchBudgetExhausted):
      search("ray", inputs, 0, 0, SearchLimits(step_budget=1))

  def test_mode_mismatch(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    with pytest.raises(ValueError):
      search("line", inputs, 0, 0)

  def test_negative_parameters(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    with pytest.raises(ValueError):
      ChainSearch(inputs, -1, 0)

  def test_ray_witness_verifies(self, load):
    fx = load("axis-ray")
    witness = search("ray", SearchInputs.from_fixture(fx), 0, 0)
    assert witness.mode == "ray"
    assert witness.tuple.m >= 1
    verdict = verify_links(witness.links, fx, ORIGIN, 0, Fraction(1))
    assert verdict.passed

  def test_larger_radius(self, load):
    fx = load("axis-ray")
    witness = search("ray", SearchInputs.from_fixture(fx), 1, 0)
    assert witness.tuple.m >= 2
    assert verify_links(witness.links, fx, ORIGIN, 1, Fraction(1)).passed

  def test_workers_do_not_change_witness(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    sequential = search("ray", inputs, 0, 0, SearchLimits(workers=1))
    threaded = search("ray", inputs, 0, 0, SearchLimits(workers=2))
    assert sequential == threaded

  def test_line_witness_verifies(self, load):
    fx = load("axis-line")
    witness = search("line", SearchInputs.from_fixture(fx), 1, 0, SearchLimits(stage_cap=1))
    t = witness.tuple
    assert t.p < t.e < t.q < t.chain.last
    mesh = Fraction(1, 2 ** (fx.hint.k0 + 3))
    assert verify_links(witness.links, fx, fx.hint.a.coords, 1, mesh).passed
