"""
Tests for drawing, ball enumeration, manifold reductions and file formats.
"""

import json
from fractions import Fraction

import pytest

from ambient.codings import set_dimension
from ambient.types import Ball, Point, SetCode
from chain_engine import SearchInputs, SearchLimits
from enumerators import (
  boundary_point,
  compact_component_cover,
  draw,
  enumerate_intersecting,
  first_emissions,
  read_emissions_csv,
  read_index_list,
  read_links_csv,
  read_sidecar,
  render_svg,
  write_cover,
  write_emissions_csv,
  write_index_list,
  write_links_csv,
)
from geometry_oracle import chain_for_arc, exact_intersects
from geometry_oracle.presentation import fixture_presentation


@pytest.fixture
def ray_cover(load):
  fx = load("axis-ray")
  return fx, draw("ray", SearchInputs.from_fixture(fx), None, 0, 0)


class TestDraw:
  """Certified drawings."""

  def test_ray_cover(self, ray_cover):
    _, cover = ray_cover
    assert cover.anchor == Point.of(0, 0)
    assert cover.mesh == 1
    assert cover.links
    ordinals = [o for o, _ in cover.balls()]
    assert ordinals == sorted(ordinals)
    meta = cover.metadata()
    assert meta["anchor"] == ["0/1", "0/1"]
    assert meta["links"] == len(cover.links)
    assert meta["witness"]["mode"] == "ray"

  def test_explicit_anchor(self, load):
    fx = load("axis-ray")
    cover = draw("ray", SearchInputs.from_fixture(fx), Point.of("1/4", 0), 0, 0)
    assert cover.anchor == Point.of("1/4", 0)

  def test_line_needs_positive_radius(self, load):
    inputs = SearchInputs.from_fixture(load("axis-line"))
    with pytest.raises(ValueError, match="n >= 1"):
      draw("line", inputs, None, 0, 0)

  def test_line_anchor_is_fixed(self, load):
    inputs = SearchInputs.from_fixture(load("axis-line"))
    with pytest.raises(ValueError, match="hint point"):
      draw("line", inputs, Point.of(1, 0), 1, 0)


class TestEnumeration:
  """Streams of balls meeting a ray."""

  def test_emissions_meet_the_ray(self, load):
    fx = load("axis-ray")
    emitted = first_emissions("ray", SearchInputs.from_fixture(fx), 5, index_step=200, budget=20000)
    assert len(emitted) == 5
    assert len(set(emitted)) == 5
    for i in emitted:
      ball = Ball.from_index(i)
      assert exact_intersects(fx, (ball.center, ball.radius))

  def test_unit_ball_is_emitted_first(self, load):
    emitted = first_emissions("ray", SearchInputs.from_fixture(load("axis-ray")), 1, index_step=200, budget=20000)
    assert emitted == [0]

  def test_zero_budget(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    assert list(enumerate_intersecting("ray", inputs, budget=0)) == []

  def test_small_budget_stops(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    emitted = list(enumerate_intersecting("ray", inputs, SearchLimits(step_budget=1), index_step=10, budget=30))
    assert len(emitted) == len(set(emitted))

  def test_validation(self, load):
    inputs = SearchInputs.from_fixture(load("axis-ray"))
    with pytest.raises(ValueError):
      list(enumerate_intersecting("line", inputs))
    with pytest.raises(ValueError):
      list(enumerate_intersecting("ray", inputs, index_step=0))
    assert first_emissions("ray", inputs, 0) == []


class TestManifolds:
  """Compact components and boundary points."""

  def test_compact_component(self, load):
    K = compact_component_cover(fixture_presentation(load("singleton")), [Ball((0, 0), 1)])
    near = SetCode.from_balls([Ball((Fraction(1, 3), 0), Fraction(1, 10))])
    far = SetCode.from_balls([Ball((5, 0), 1)])
    assert K(near, 10)
    assert not K(far, 10)

  def test_needs_isolating_balls(self, load):
    with pytest.raises(ValueError):
      compact_component_cover(fixture_presentation(load("singleton")), [])

  def test_boundary_point(self, load):
    fx = load("segment")
    M = fixture_presentation(fx)
    boundary = fixture_presentation(fx.boundary())
    point = boundary_point(M, boundary, Ball((0, 0), Fraction(1, 2)), 4)
    assert point[0] ** 2 + point[1] ** 2 < Fraction(1, 256)


class TestExport:
  """Cover, emission and witness files."""

  def test_cover_file(self, ray_cover, tmp_path):
    _, cover = ray_cover
    path = write_cover(cover, tmp_path / "cover.csv")
    assert read_links_csv(path) == list(cover.links)
    meta = read_sidecar(path)
    assert meta["n"] == 0
    assert meta["mesh_exponent"] == 0

  def test_cover_rows(self, tmp_path):
    path = write_links_csv([SetCode.from_balls([Ball((1, 0), 1)])], tmp_path / "one.csv")
    lines = path.read_text().splitlines()
    assert lines == ["link_ordinal,ball_index,center,radius", "0,1,1/1;0/1,1/1"]

  def test_tab_delimiter(self, tmp_path):
    links = [SetCode.from_balls([Ball((0, 0), 1)]), SetCode.from_balls([Ball((1, 0), 1)])]
    path = write_links_csv(links, tmp_path / "tabs.csv", delimiter="\t")
    assert read_links_csv(path, delimiter="\t") == links

  def test_inconsistent_index(self, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("link_ordinal,ball_index,center,radius\n0,5,1/1;0/1,1/1\n")
    with pytest.raises(ValueError, match="does not match"):
      read_links_csv(path)

  def test_ordinal_gap(self, tmp_path):
    path = tmp_path / "gap.csv"
    path.write_text("link_ordinal,ball_index,center,radius\n0,1,1/1;0/1,1/1\n2,1,1/1;0/1,1/1\n")
    with pytest.raises(ValueError, match="ordinals"):
      read_links_csv(path)

  def test_missing_sidecar(self, tmp_path):
    path = write_links_csv([SetCode.from_balls([Ball((1, 0), 1)])], tmp_path / "bare.csv")
    assert read_sidecar(path) is None

  def test_emissions(self, tmp_path):
    path = write_emissions_csv([7, 0, 3], tmp_path / "emissions.csv")
    assert read_emissions_csv(path) == [7, 0, 3]

  def test_index_list(self, tmp_path):
    path = write_index_list([1, 4, 9], tmp_path / "witnesses.json", {"fixture": "axis-ray"})
    assert read_index_list(path) == [1, 4, 9]
    assert json.loads(path.read_text())["fixture"] == "axis-ray"

  def test_malformed_index_list(self, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"fixture": "x"}')
    with pytest.raises(ValueError):
      read_index_list(path)

  def test_svg(self, load, tmp_path):
    fx = load("segment")
    chain = chain_for_arc(fx.param, Fraction(1))
    balls = [(o, b) for o, link in enumerate(chain.links) for b in link.decoded]
    path = render_svg(balls, tmp_path / "segment.svg", fx, title="segment")
    assert "<svg" in path.read_text()

  def test_svg_is_planar(self, tmp_path):
    set_dimension(3)
    with pytest.raises(ValueError, match="planar"):
      render_svg([(0, Ball((0, 0, 0), 1))], tmp_path / "cube.svg")
