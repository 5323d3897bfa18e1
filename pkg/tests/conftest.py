"""
Shared fixtures for the chain cover engine tests.
"""

import random
from fractions import Fraction
from pathlib import Path

import pytest

from ambient.codings import set_dimension
from ambient.types import Ball
from geometry_oracle.fixtures import load_fixture

FIXTURE_DIR = Path(__file__).parent.parent / "data" / "fixtures"


@pytest.fixture(autouse=True)
def planar():
  """Every test starts in the plane."""
  set_dimension(2)
  yield
  set_dimension(2)


@pytest.fixture
def fixture_dir():
  return FIXTURE_DIR


@pytest.fixture
def load():
  """Load a fixture of the corpus by id."""

  def _load(fixture_id):
    return load_fixture(FIXTURE_DIR / f"{fixture_id}.json")

  return _load


@pytest.fixture
def rng():
  return random.Random(20240611)


@pytest.fixture
def config(tmp_path):
  """A small valid configuration writing into the test's temp dir."""
  return {
    "general": {
      "dimension": 2,
      "processing": {"max_workers": 1},
      "directories": {"output": str(tmp_path / "outputs")},
    },
    "geometry_oracle": {"spiral": {"depth_cap": 40}, "cover": {"depth_cap": 48}, "chain": {"max_refinements": 12}},
    "chain_engine": {"stage_cap": 3, "step_budget": 4000, "prune_fuel": 20, "pure_naturals": False},
    "enumerators": {"index_step": 200, "budget": 20000},
    "verify": {"witness_scan": 400, "slack": "1/8"},
    "cli": {"svg": {"enabled": False}, "csv": {"delimiter": ","}},
  }


@pytest.fixture
def random_ball(rng):
  """Draw planar balls with centers on the 1/8 grid in [-4, 4]^2 and radii in [1/8, 2]."""

  def _draw():
    center = tuple(Fraction(rng.randint(-32, 32), 8) for _ in range(2))
    return Ball(center, Fraction(rng.randint(1, 16), 8))

  return _draw


@pytest.fixture
def point_inside(rng):
  """Draw a rational point strictly inside a planar ball."""

  def _draw(ball):
    s, t = (Fraction(rng.randint(-7, 7), 10) for _ in range(2))
    return (ball.center[0] + s * ball.radius, ball.center[1] + t * ball.radius)

  return _draw
