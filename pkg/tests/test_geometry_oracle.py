"""
Tests for fixtures, exact geometry and constructive chains.
"""

import json
from fractions import Fraction

import pytest

from ambient.types import Ball, Point, SetCode
from formal.chains import fmesh_lt, is_formal_chain
from geometry_oracle import (
  FixtureError,
  build_arc_chain,
  chain_for_arc,
  contained_span,
  cover_enumerator,
  dumps_fixture,
  exact_cover_check,
  exact_intersects,
  fixture_from_dict,
  load_fixture,
  union_diameter_lt,
)
from geometry_oracle.surds import QuadraticSurd, closed_covered_by_open, sign_surd

CORPUS = [
  "axis-ray",
  "axis-ray-noise",
  "axis-line",
  "unit-circle",
  "polyline-ray-noise",
  "quarter-spiral-ray",
  "segment",
  "circle-and-ray",
  "singleton",
]


class TestFixtureLoading:
  """Loading and validation of the fixture corpus."""

  @pytest.mark.parametrize("fixture_id", CORPUS)
  def test_corpus_loads(self, load, fixture_id):
    fx = load(fixture_id)
    assert fx.id == fixture_id
    assert fx.pieces()

  def test_modes(self, load):
    assert load("axis-ray").mode == "ray"
    assert load("quarter-spiral-ray").mode == "ray"
    assert load("axis-line").mode == "line"
    assert load("segment").mode is None

  def test_endpoint(self, load):
    assert load("axis-ray").endpoint() == Point.of(0, 0)
    with pytest.raises(FixtureError):
      load("segment").endpoint()

  def test_line_hint(self, load):
    hint = load("axis-line").hint
    assert hint.a == Point.of(0, 0)
    assert hint.k0 == 1
    assert hint.ball_c.center == (0, 0)

  def test_boundary(self, load):
    boundary = load("segment").boundary()
    assert boundary.kind == "point-set"
    assert set(boundary.boundary_points) == {(0, 0), (3, 0)}
    assert load("unit-circle").boundary().pieces() == []

  def test_dumps_is_json(self, load):
    fx = load("axis-ray-noise")
    assert json.loads(dumps_fixture(fx))["id"] == "axis-ray-noise"

  def test_missing_file(self, tmp_path):
    with pytest.raises(FileNotFoundError):
      load_fixture(tmp_path / "absent.json")

  def test_malformed_json(self, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(FixtureError):
      load_fixture(path)


class TestFixtureValidation:
  """Malformed fixtures are rejected with FixtureError."""

  def test_unknown_kind(self):
    with pytest.raises(FixtureError, match="unknown kind"):
      fixture_from_dict({"id": "x", "kind": "blob"})

  def test_decimal_coordinates(self):
    with pytest.raises(FixtureError):
      fixture_from_dict({"id": "x", "kind": "polyline-arc", "vertices": [["0.5", "0/1"], ["1/1", "0/1"]]})

  def test_noise_meeting_curve(self):
    data = {
      "id": "x",
      "kind": "polyline-ray",
      "vertices": [["0/1", "0/1"], ["1/1", "0/1"]],
      "noise": [{"center": ["2/1", "1/1"], "radius": "1/1"}],
    }
    with pytest.raises(FixtureError, match="meets the curve"):
      fixture_from_dict(data)

  def test_anchors_only_on_lines(self):
    data = {
      "id": "x",
      "kind": "polyline-ray",
      "vertices": [["0/1", "0/1"], ["1/1", "0/1"]],
      "anchors": {},
    }
    with pytest.raises(FixtureError, match="anchors"):
      fixture_from_dict(data)

  def test_bad_hint(self, fixture_dir):
    with open(fixture_dir / "axis-line.json") as f:
      data = json.load(f)
    data["anchors"]["delta"] = "1/4"
    with pytest.raises(FixtureError, match="I_A"):
      fixture_from_dict(data)


class TestExactGeometry:
  """Ground-truth intersection and cover decisions."""

  def test_tangent_ball(self, load):
    fx = load("axis-ray")
    ball = ((Fraction(0), Fraction(1)), Fraction(1))
    assert not exact_intersects(fx, ball)
    assert exact_intersects(fx, ball, closed=True)

  def test_behind_the_endpoint(self, load):
    fx = load("axis-ray")
    ball = ((Fraction(-1), Fraction(0)), Fraction(1))
    assert not exact_intersects(fx, ball)
    assert exact_intersects(fx, ball, closed=True)

  def test_noise(self, load):
    fx = load("axis-ray-noise")
    ball = ((Fraction(0), Fraction(5)), Fraction(1, 2))
    assert not exact_intersects(fx, ball)
    assert exact_intersects(fx, ball, include_noise=True)

  def test_circle(self, load):
    fx = load("unit-circle")
    assert not exact_intersects(fx, ((Fraction(0), Fraction(0)), Fraction(1, 2)), closed=True)
    assert exact_intersects(fx, ((Fraction(1), Fraction(0)), Fraction(1, 10)))
    assert exact_intersects(fx, ((Fraction(3, 5), Fraction(4, 5)), Fraction(1, 100)))

  def test_segment_cover(self, load):
    fx = load("segment")
    balls = [((Fraction(x), Fraction(0)), Fraction(1)) for x in range(4)]
    a = (Fraction(3, 2), Fraction(0))
    assert exact_cover_check(fx, a, 2, balls)
    assert not exact_cover_check(fx, a, 2, balls[:-1])
    # the uncovered end lies outside the smaller anchor ball
    assert exact_cover_check(fx, a, 1, balls[:-1])

  def test_union_diameter(self):
    balls = [Ball((0, 0), 1), Ball((2, 0), 1)]
    assert not union_diameter_lt(balls, 4)
    assert union_diameter_lt(balls, Fraction(41, 10))


class TestSurds:
  """Exact comparisons of quadratic surds."""

  def test_sign(self):
    assert sign_surd(Fraction(-1), Fraction(1), Fraction(2)) == 1
    assert sign_surd(Fraction(-2), Fraction(1), Fraction(4)) == 0
    assert sign_surd(Fraction(3, 2), Fraction(-1), Fraction(2)) == 1

  def test_ordering(self):
    root2 = QuadraticSurd(Fraction(0), Fraction(1), Fraction(2))
    assert QuadraticSurd.rational(Fraction(7, 5)) < root2 < QuadraticSurd.rational(Fraction(3, 2))
    assert QuadraticSurd(Fraction(0), Fraction(1), Fraction(4)) == QuadraticSurd.rational(Fraction(2))

  def test_interval_cover(self):
    q = QuadraticSurd.rational
    target = (q(Fraction(0)), q(Fraction(1)))
    assert closed_covered_by_open(target, [(q(Fraction(-1)), q(Fraction(1, 2))), (q(Fraction(1, 4)), q(Fraction(2)))])
    assert not closed_covered_by_open(target, [(q(Fraction(-1)), q(Fraction(1, 2))), (q(Fraction(1, 2)), q(Fraction(2)))])


class TestArcChains:
  """Constructive chains along fixture subarcs."""

  def test_segment_chain(self, load):
    fx = load("segment")
    chain = chain_for_arc(fx.param, Fraction(1))
    assert is_formal_chain(chain)
    assert fmesh_lt(chain, Fraction(1))
    for ball in chain.balls():
      assert exact_intersects(fx, (ball.center, ball.radius))
    assert exact_cover_check(fx, (Fraction(3, 2), Fraction(0)), 2, chain.balls())

  def test_cover_predicates_hold(self, load):
    arc = build_arc_chain(load("segment").param, Fraction(1))
    assert all(pred.holds() for pred in arc.predicates())

  def test_ray_subarc(self, load):
    fx = load("axis-ray")
    chain = chain_for_arc(fx.param, Fraction(1), Fraction(0), Fraction(3))
    assert chain[0].contains((Fraction(0), Fraction(0)))
    p, q = contained_span(chain, (Fraction(0), Fraction(0)), Fraction(2), 0)
    assert p == 0
    assert 0 < q < chain.last

  def test_invalid_range(self, load):
    fx = load("axis-ray")
    with pytest.raises(ValueError):
      chain_for_arc(fx.param, Fraction(1))
    with pytest.raises(ValueError):
      chain_for_arc(fx.param, Fraction(0), Fraction(0), Fraction(1))

  def test_cover_enumerator(self, load):
    cover = cover_enumerator(load("singleton"))
    assert cover(2) == SetCode.from_balls([Ball((Fraction(1, 3), 0), Fraction(1, 4))])
    with pytest.raises(FixtureError):
      cover_enumerator(load("axis-ray"))
