"""
Tests for the command line.
"""

import json
from pathlib import Path

import pytest
import yaml

from cli import RunConfig, build_parser, parse_count, run
from enumerators import read_emissions_csv, read_index_list, read_links_csv, read_sidecar, write_index_list

FIXTURE_DIR = Path(__file__).parent.parent / "data" / "fixtures"


@pytest.fixture
def workspace(config, tmp_path, monkeypatch):
  """A temp working directory with a config file; returns (config path, tmp dir)."""
  monkeypatch.chdir(tmp_path)
  path = tmp_path / "config.yaml"
  path.write_text(yaml.safe_dump(config))
  return str(path), tmp_path


def _fixture(fixture_id):
  return str(FIXTURE_DIR / f"{fixture_id}.json")


class TestParseCount:
  """Budget notation."""

  @pytest.mark.parametrize("text,expected", [
    ("1000", 1000),
    ("10^6", 10 ** 6),
    ("10^6-steps", 10 ** 6),
    ("2^10steps", 1024),
    (42, 42),
  ])
  def test_counts(self, text, expected):
    assert parse_count(text) == expected

  @pytest.mark.parametrize("text", ["", "ten", "1e6", "-5", "10^"])
  def test_rejects(self, text):
    with pytest.raises(ValueError):
      parse_count(text)


class TestRunConfig:
  """Flag combinations."""

  def test_unknown_command(self):
    with pytest.raises(ValueError, match="unknown command"):
      RunConfig(command="plot", fixture=Path("x"))

  def test_verify_needs_one_source(self):
    with pytest.raises(ValueError, match="exactly one"):
      RunConfig(command="verify", fixture=Path("x"))

  def test_emissions_need_witnesses(self):
    with pytest.raises(ValueError, match="--witnesses"):
      RunConfig(command="verify", fixture=Path("x"), emissions=Path("e.csv"))

  def test_draw_needs_parameters(self):
    with pytest.raises(ValueError):
      RunConfig(command="draw", fixture=Path("x"), out=Path("c.csv"))

  def test_line_draw_needs_radius(self):
    with pytest.raises(ValueError, match="n >= 1"):
      RunConfig(command="draw", fixture=Path("x"), mode="line", n=0, k=0, out=Path("c.csv"))

  def test_from_args(self, config):
    args = build_parser().parse_args([
      "draw", "--fixture", "f.json", "--n", "1", "--k", "2", "--out", "c.csv",
      "--budget", "10^3", "--stage-cap", "1", "--anchor", "1/2,0",
    ])
    rc = RunConfig.from_args(args, config)
    assert rc.limits.step_budget == 1000
    assert rc.limits.stage_cap == 1
    assert rc.anchor.format(",") == "1/2,0/1"
    assert rc.budget == 20000
    assert rc.scan == 400

  def test_anchor_dimension(self, config):
    args = build_parser().parse_args([
      "draw", "--fixture", "f.json", "--n", "1", "--k", "2", "--out", "c.csv", "--anchor", "0,0,0",
    ])
    with pytest.raises(ValueError, match="coordinates"):
      RunConfig.from_args(args, config)


class TestRun:
  """End-to-end commands on the fixture corpus."""

  def test_no_command(self):
    assert run([]) == 3

  def test_missing_fixture(self, workspace):
    cfg, tmp = workspace
    status = run(["--config", cfg, "draw", "--fixture", str(tmp / "absent.json"),
                  "--n", "0", "--k", "0", "--out", str(tmp / "c.csv")])
    assert status == 3

  def test_missing_config(self, tmp_path):
    status = run(["--config", str(tmp_path / "none.yaml"), "witnesses",
                  "--fixture", _fixture("axis-ray"), "--out", str(tmp_path / "w.json")])
    assert status == 3

  def test_draw_then_verify(self, workspace, capsys):
    cfg, tmp = workspace
    cover = tmp / "axis-ray.csv"
    assert run(["--config", cfg, "draw", "--fixture", _fixture("axis-ray"),
                "--n", "0", "--k", "0", "--out", str(cover)]) == 0
    assert read_links_csv(cover)
    assert read_sidecar(cover)["mode"] == "ray"
    capsys.readouterr()
    report = tmp / "verdicts.jsonl"
    assert run(["--config", cfg, "verify", "--fixture", _fixture("axis-ray"),
                "--cover", str(cover), "--report", str(report)]) == 0
    printed = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert printed["result"] == "PASS"
    assert json.loads(report.read_text())["check"] == "cover"

  def test_verify_catches_a_tighter_mesh(self, workspace):
    cfg, tmp = workspace
    cover = tmp / "axis-ray.csv"
    assert run(["--config", cfg, "draw", "--fixture", _fixture("axis-ray"),
                "--n", "0", "--k", "0", "--out", str(cover)]) == 0
    assert run(["--config", cfg, "verify", "--fixture", _fixture("axis-ray"),
                "--cover", str(cover), "--k", "12"]) == 1

  def test_enumerate_then_verify(self, workspace):
    cfg, tmp = workspace
    out = tmp / "emissions.csv"
    assert run(["--config", cfg, "enumerate", "--fixture", _fixture("axis-ray"),
                "--limit", "3", "--out", str(out)]) == 0
    emitted = read_emissions_csv(out)
    assert len(emitted) == 3
    witnesses = write_index_list([emitted[0]], tmp / "witnesses.json")
    assert run(["--config", cfg, "verify", "--fixture", _fixture("axis-ray"),
                "--emissions", str(out), "--witnesses", str(witnesses)]) == 0

  def test_enumerate_budget_runs_out(self, workspace):
    cfg, tmp = workspace
    status = run(["--config", cfg, "enumerate", "--fixture", _fixture("axis-ray"),
                  "--limit", "3", "--budget", "0", "--out", str(tmp / "none.csv")])
    assert status == 2

  def test_chain(self, workspace):
    cfg, tmp = workspace
    out = tmp / "segment.csv"
    assert run(["--config", cfg, "chain", "--fixture", _fixture("segment"),
                "--epsilon", "1", "--out", str(out)]) == 0
    assert read_sidecar(out)["links"] == len(read_links_csv(out))

  def test_chain_needs_a_bounded_arc(self, workspace):
    cfg, tmp = workspace
    status = run(["--config", cfg, "chain", "--fixture", _fixture("axis-ray"),
                  "--epsilon", "1", "--out", str(tmp / "ray.csv")])
    assert status == 3

  def test_witnesses(self, workspace):
    cfg, tmp = workspace
    out = tmp / "witnesses.json"
    assert run(["--config", cfg, "witnesses", "--fixture", _fixture("axis-ray"),
                "--scan", "30", "--out", str(out)]) == 0
    assert 0 in read_index_list(out)
