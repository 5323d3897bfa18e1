"""
Acceptance runs at desk scale under the default search caps.

These are slow; select them with `pytest -m slow`.
"""

from fractions import Fraction

import pytest

from ambient.types import Ball, SetCode, dist2
from chain_engine import SearchInputs, SearchLimits, line_formal_failure
from enumerators import (
  boundary_point,
  compact_component_cover,
  draw,
  enumerate_intersecting,
  first_emissions,
  write_cover,
  write_emissions_csv,
)
from formal.distance import sqrt_upper
from geometry_oracle import exact_cover_check, exact_intersects
from geometry_oracle.presentation import fixture_presentation
from verify import generate_witness_list, verify_cover, verify_stream

pytestmark = pytest.mark.slow

BUDGET = 10 ** 6


class TestRayDrawings:
  """Certified ray drawings pass exact verification."""

  @pytest.mark.parametrize("fixture_id", ["axis-ray", "polyline-ray-noise"])
  @pytest.mark.parametrize("n,k", [(1, 2), (2, 3), (4, 5)])
  def test_draw_verifies(self, load, fixture_id, n, k):
    fx = load(fixture_id)
    cover = draw("ray", SearchInputs.from_fixture(fx), None, n, k)
    assert cover.witness.stage <= SearchLimits().stage_cap
    verdict = verify_cover(cover, fx)
    assert verdict.passed, verdict.counterexample

  def test_quarter_spiral(self, load):
    fx = load("quarter-spiral-ray")
    cover = draw("ray", SearchInputs.from_fixture(fx), None, 2, 3)
    verdict = verify_cover(cover, fx)
    assert verdict.passed, verdict.counterexample


class TestLineDrawings:
  """Certified line drawings pass exact verification and replay their ordering."""

  @pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (4, 3)])
  def test_draw_verifies(self, load, n, k):
    fx = load("axis-line")
    cover = draw("line", SearchInputs.from_fixture(fx), None, n, k)
    t = cover.witness.tuple
    assert t.p < t.e < t.q < t.chain.last
    assert line_formal_failure(t, fx.hint) is None
    verdict = verify_cover(cover, fx)
    assert verdict.passed, verdict.counterexample


class TestEnumerationCompleteness:
  """Every witness index is emitted and no emission misses the set."""

  @pytest.mark.parametrize("fixture_id", ["axis-ray", "axis-line"])
  def test_witness_list_emitted(self, load, fixture_id):
    fx = load(fixture_id)
    witnesses = generate_witness_list(fx, 5000, Fraction(1, 8))
    assert witnesses
    pending = set(witnesses)
    emitted = []
    for i in enumerate_intersecting(fx.mode, SearchInputs.from_fixture(fx), budget=BUDGET):
      emitted.append(i)
      pending.discard(i)
      if not pending and len(emitted) >= 200:
        break
    for i in emitted[:200]:
      ball = Ball.from_index(i)
      assert exact_intersects(fx, (ball.center, ball.radius))
    assert not pending
    assert verify_stream(emitted, fx, witnesses, BUDGET).passed


class TestReductions:
  """Boundary points and compact components."""

  @pytest.mark.parametrize("fixture_id,endpoint", [
    ("axis-ray", (0, 0)),
    ("segment", (0, 0)),
    ("segment", (3, 0)),
  ])
  def test_boundary_point(self, load, fixture_id, endpoint):
    fx = load(fixture_id)
    M = fixture_presentation(fx)
    boundary = fixture_presentation(fx.boundary())
    point = boundary_point(M, boundary, Ball(endpoint, Fraction(1, 2)), 6)
    assert dist2(point.coords, endpoint) < Fraction(1, 2 ** 12)

  def test_circle_component(self, load, random_ball, rng):
    fx = load("circle-and-ray")
    K = compact_component_cover(fixture_presentation(fx), [Ball((0, 0), 2)])
    for _ in range(25):
      j = SetCode.from_balls([random_ball() for _ in range(rng.randint(1, 3))])
      if K(j, 8):
        assert exact_cover_check(fx, (0, 0), 2, j.decoded)
    for _ in range(25):
      center = (Fraction(rng.randint(-4, 4), 16), Fraction(rng.randint(-4, 4), 16))
      reach = sqrt_upper(dist2(center, (0, 0)), 16) + 1 + Fraction(1, 8)
      assert K(SetCode.from_balls([Ball(center, reach)]), 8)


class TestDeterminism:
  """One and four workers write byte-identical files."""

  def test_draw_files(self, load, tmp_path):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    paths = []
    for workers in (1, 4):
      cover = draw("ray", inputs, None, 1, 2, SearchLimits(workers=workers))
      paths.append(write_cover(cover, tmp_path / f"cover-{workers}.csv"))
    first, second = paths
    assert first.read_bytes() == second.read_bytes()
    assert first.with_suffix(".json").read_bytes() == second.with_suffix(".json").read_bytes()

  def test_emission_files(self, load, tmp_path):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    paths = []
    for workers in (1, 4):
      emitted = first_emissions("ray", inputs, 50, SearchLimits(workers=workers), budget=BUDGET)
      paths.append(write_emissions_csv(emitted, tmp_path / f"emissions-{workers}.csv"))
    assert paths[0].read_bytes() == paths[1].read_bytes()
