"""
Tests for exact verdicts and witness lists.
"""

import json
from fractions import Fraction

import pytest

from ambient.types import Ball, SetCode
from geometry_oracle import chain_for_arc
from verify import (
  FAIL,
  PASS,
  UNDECIDED,
  Verdict,
  aggregate_status,
  generate_witness_list,
  verify_links,
  verify_stream,
  write_verdicts,
)

ANCHOR = (Fraction(3, 2), Fraction(0))
FAR = SetCode.from_balls([Ball((10, 10), 1)])


@pytest.fixture
def segment(load):
  fx = load("segment")
  return fx, list(chain_for_arc(fx.param, Fraction(1)).links)


class TestVerifyLinks:
  """Meet, cover and mesh checks on link lists."""

  def test_segment_chain_passes(self, segment):
    fx, links = segment
    verdict = verify_links(links, fx, ANCHOR, 2, Fraction(1))
    assert verdict.result == PASS
    assert verdict.passed
    assert verdict.counterexample is None
    assert verdict.params["mesh"] == "1/1"

  def test_link_off_the_curve(self, segment):
    fx, links = segment
    verdict = verify_links([FAR] + links, fx, ANCHOR, 2, Fraction(1))
    assert verdict.result == FAIL
    assert verdict.counterexample["reason"] == "link misses the curve"
    assert verdict.counterexample["link_ordinal"] == 0

  def test_mesh_too_fine(self, segment):
    fx, links = segment
    verdict = verify_links(links, fx, ANCHOR, 2, Fraction(1, 100))
    assert verdict.result == FAIL
    assert verdict.counterexample["reason"] == "link diameter not below the mesh"

  def test_missing_links(self, segment):
    fx, links = segment
    verdict = verify_links(links[:1], fx, ANCHOR, 2, Fraction(1))
    assert verdict.result == FAIL
    assert verdict.counterexample["reason"] == "links do not cover the curve in the anchor ball"

  def test_params_recorded(self, segment):
    fx, links = segment
    verdict = verify_links(links, fx, ANCHOR, 2, Fraction(1), params={"stage": 1})
    assert verdict.params == {"stage": 1, "n": 2, "mesh": "1/1"}
    assert verdict.check == "cover"
    assert verdict.fixture_id == "segment"


class TestVerifyStream:
  """Soundness and completeness of emission lists."""

  def test_pass(self, load):
    verdict = verify_stream([0, 1], load("axis-ray"), [1], budget=100)
    assert verdict.result == PASS
    assert verdict.params == {"budget": 100, "emissions": 2, "witnesses": 1}

  def test_emission_off_the_curve(self, load):
    far = Ball((10, 10), 1).index
    verdict = verify_stream([0, far], load("axis-ray"), [], budget=100)
    assert verdict.result == FAIL
    assert verdict.counterexample["reason"] == "emitted ball misses the curve"
    assert verdict.counterexample["emission"] == 1
    assert verdict.counterexample["ball_index"] == str(far)

  def test_missing_witness(self, load):
    verdict = verify_stream([0], load("axis-ray"), [0, 1], budget=0)
    assert verdict.result == FAIL
    assert verdict.counterexample["missing"] == 1
    assert verdict.counterexample["reason"] == "witness index not emitted within the budget"


class TestVerdictFiles:
  """Status codes and JSON lines."""

  def test_aggregate_status(self):
    ok = Verdict("cover", "x")
    bad = Verdict("cover", "x", result=FAIL)
    open_ = Verdict("cover", "x", result=UNDECIDED)
    assert aggregate_status([]) == 0
    assert aggregate_status([ok, ok]) == 0
    assert aggregate_status([ok, open_]) == 2
    assert aggregate_status([open_, bad]) == 1

  def test_to_json(self):
    verdict = Verdict("stream", "axis-ray", {"budget": 3}, FAIL, {"reason": "r"})
    data = json.loads(verdict.to_json())
    assert data == {
      "check": "stream",
      "fixture_id": "axis-ray",
      "params": {"budget": 3},
      "result": "FAIL",
      "counterexample": {"reason": "r"},
    }

  def test_write_verdicts(self, tmp_path):
    verdicts = [Verdict("cover", "a"), Verdict("stream", "b", result=FAIL)]
    path = write_verdicts(verdicts, tmp_path / "out" / "verdicts.jsonl")
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["fixture_id"] for r in rows] == ["a", "b"]
    assert rows[1]["result"] == "FAIL"


class TestWitnessLists:
  """Balls that meet the curve with slack."""

  def test_axis_ray(self, load):
    fx = load("axis-ray")
    indices = generate_witness_list(fx, scan=50, slack=Fraction(1, 8))
    assert 0 in indices
    assert indices == sorted(indices)
    assert all(i < 50 for i in indices)

  def test_slack_shrinks_the_list(self, load):
    fx = load("axis-ray")
    loose = generate_witness_list(fx, scan=50, slack=Fraction(0))
    tight = generate_witness_list(fx, scan=50, slack=Fraction(1, 2))
    assert set(tight) <= set(loose)

  def test_empty_scan(self, load):
    assert generate_witness_list(load("axis-ray"), scan=0) == []

  def test_negative_slack(self, load):
    with pytest.raises(ValueError):
      generate_witness_list(load("axis-ray"), scan=10, slack=Fraction(-1, 8))
