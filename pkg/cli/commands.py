"""
Command-line interface for the Certified Chain Cover Engine.

Exit statuses: 0 on success or when every verdict passes, 1 when a
verdict fails, 2 when a search budget runs out or a verdict is undecided,
3 on input errors.
"""

import argparse
import logging
from fractions import Fraction
from typing import Optional, Sequence

import yaml

from ambient.codings import set_dimension
from ambient.types import Point
from chain_engine.search import SearchBudgetExhausted, SearchInputs
from enumerators.draw import draw
from enumerators.export import (
  read_emissions_csv,
  read_index_list,
  read_links_csv,
  read_sidecar,
  render_svg,
  write_cover,
  write_emissions_csv,
  write_index_list,
  write_links_csv,
  write_sidecar,
)
from enumerators.stream import first_emissions
from geometry_oracle.arcs import chain_for_arc
from geometry_oracle.fixtures import Fixture, FixtureError, load_fixture
from geometry_oracle.pieces import UndecidedAtCap
from utils.config_loader import setup_config
from verify.verdicts import Verdict, aggregate_status, verify_links, verify_stream, write_verdicts
from verify.witness_lists import generate_witness_list
from .run_config import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


def build_parser() -> argparse.ArgumentParser:
  """The argument parser with one subcommand per operation."""
  parser = argparse.ArgumentParser(description="Certified chain covers of presented rays and lines")
  parser.add_argument('--config', '-c', help='Path to configuration file')
  parser.add_argument('--dimension', type=int, help='Ambient dimension (default from config)')
  parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging and progress bars')

  subparsers = parser.add_subparsers(dest='command', help='Command to execute')
  subparsers.required = True

  def search_flags(sub):
    sub.add_argument('--fixture', required=True, help='Fixture JSON file')
    sub.add_argument('--mode', choices=['ray', 'line'], help='Search mode (default: the fixture kind)')
    sub.add_argument('--stage-cap', type=int, dest='stage_cap', help='Highest candidate stage')
    sub.add_argument('--workers', type=int, help='Certification threads')
    sub.add_argument('--pure-naturals', action='store_true', dest='pure_naturals',
                     help='Enumerate tuples from the naturals instead of dyadic chains')

  draw_parser = subparsers.add_parser('draw', help='Draw a certified cover')
  search_flags(draw_parser)
  draw_parser.add_argument('--anchor', help='Anchor point "p/q,p/q"')
  draw_parser.add_argument('--n', type=int, required=True, help='Radius of the covered ball')
  draw_parser.add_argument('--k', type=int, required=True, help='Resolution exponent')
  draw_parser.add_argument('--budget', dest='step_budget', help='Search step budget, e.g. 4000 or 10^4')
  draw_parser.add_argument('--out', required=True, help='Cover CSV path')
  draw_parser.add_argument('--svg', help='Optional SVG rendering')

  enum_parser = subparsers.add_parser('enumerate', help='Enumerate balls meeting the set')
  search_flags(enum_parser)
  enum_parser.add_argument('--limit', type=int, default=50, help='Number of emissions')
  enum_parser.add_argument('--budget', help='Total work budget, e.g. 10^6-steps')
  enum_parser.add_argument('--step-budget', dest='step_budget', help='Step budget of each search')
  enum_parser.add_argument('--index-step', type=int, dest='index_step', help='Index window growth per round')
  enum_parser.add_argument('--out', required=True, help='Emission CSV path')

  verify_parser = subparsers.add_parser('verify', help='Verify a cover or an emission file')
  verify_parser.add_argument('--fixture', required=True, help='Fixture JSON file')
  verify_parser.add_argument('--cover', help='Cover CSV written by draw or chain')
  verify_parser.add_argument('--anchor', help='Override the sidecar anchor')
  verify_parser.add_argument('--n', type=int, help='Override the sidecar n')
  verify_parser.add_argument('--k', type=int, help='Override the sidecar resolution exponent')
  verify_parser.add_argument('--emissions', help='Emission CSV written by enumerate')
  verify_parser.add_argument('--witnesses', help='Witness list JSON')
  verify_parser.add_argument('--budget', help='Budget recorded in the verdict')
  verify_parser.add_argument('--report', help='JSON-lines output (default: stdout)')

  chain_parser = subparsers.add_parser('chain', help='Constructive chain along a fixture subarc')
  chain_parser.add_argument('--fixture', required=True, help='Fixture JSON file')
  chain_parser.add_argument('--epsilon', required=True, help='Link diameter bound "p/q"')
  chain_parser.add_argument('--lo', help='Start parameter "p/q"')
  chain_parser.add_argument('--hi', help='End parameter "p/q"')
  chain_parser.add_argument('--out', required=True, help='Chain CSV path')
  chain_parser.add_argument('--svg', help='Optional SVG rendering')

  witness_parser = subparsers.add_parser('witnesses', help='Generate a witness list')
  witness_parser.add_argument('--fixture', required=True, help='Fixture JSON file')
  witness_parser.add_argument('--scan', type=int, help='Number of ball indices scanned')
  witness_parser.add_argument('--slack', help='Radius margin "p/q"')
  witness_parser.add_argument('--out', required=True, help='Witness list JSON path')

  return parser


def _inputs(rc: RunConfig, fx: Fixture) -> SearchInputs:
  mode = rc.mode or fx.mode
  anchor = rc.anchor if mode == "ray" else None
  return SearchInputs.from_fixture(fx, mode, anchor, rc.spiral_depth_cap)


def _svg_enabled(config: dict) -> bool:
  return bool(config.get("cli", {}).get("svg", {}).get("enabled", True))


def cmd_draw(rc: RunConfig, fx: Fixture, config: dict) -> int:
  inputs = _inputs(rc, fx)
  cover = draw(inputs.mode, inputs, rc.anchor, rc.n, rc.k, rc.limits)
  write_cover(cover, rc.out, rc.delimiter)
  if rc.svg is not None and _svg_enabled(config):
    render_svg(cover.balls(), rc.svg, fx, title=f"{fx.id}: n={rc.n}, k={rc.k}")
  print(f"Drew {len(cover.links)} links to {rc.out}")
  return EXIT_OK


def cmd_enumerate(rc: RunConfig, fx: Fixture, config: dict) -> int:
  inputs = _inputs(rc, fx)
  emitted = first_emissions(inputs.mode, inputs, rc.limit, rc.limits, rc.index_step, rc.budget, rc.verbose)
  write_emissions_csv(emitted, rc.out, rc.delimiter)
  print(f"Emitted {len(emitted)} balls to {rc.out}")
  if len(emitted) < rc.limit:
    logger.warning(f"Budget ran out after {len(emitted)} of {rc.limit} emissions")
    return EXIT_BUDGET
  return EXIT_OK


def _cover_verdict(rc: RunConfig, fx: Fixture) -> Verdict:
  links = read_links_csv(rc.cover, rc.delimiter)
  meta = read_sidecar(rc.cover) or {}
  mode = meta.get("mode", fx.mode)
  if rc.anchor is not None:
    anchor = rc.anchor
  elif "anchor" in meta:
    anchor = Point.of(*meta["anchor"])
  else:
    raise ValueError(f"{rc.cover}: no sidecar anchor; pass --anchor")
  n = rc.n if rc.n is not None else meta.get("n")
  if n is None:
    raise ValueError(f"{rc.cover}: no sidecar n; pass --n")
  if rc.k is not None:
    exponent = rc.k if mode != "line" else rc.k + fx.hint.k0 + 3
  elif "mesh_exponent" in meta:
    exponent = int(meta["mesh_exponent"])
  else:
    raise ValueError(f"{rc.cover}: no sidecar mesh; pass --k")
  params = {"mode": mode, "n": n, "mesh_exponent": exponent, "cover": str(rc.cover)}
  return verify_links(links, fx, anchor.coords, int(n), Fraction(1, 2 ** exponent), params,
                      rc.depth_cap, rc.spiral_depth_cap)


def cmd_verify(rc: RunConfig, fx: Fixture, config: dict) -> int:
  if rc.cover is not None:
    verdicts = [_cover_verdict(rc, fx)]
  else:
    emissions = read_emissions_csv(rc.emissions, rc.delimiter)
    witnesses = read_index_list(rc.witnesses)
    verdicts = [verify_stream(emissions, fx, witnesses, rc.budget, rc.spiral_depth_cap)]
  if rc.report is not None:
    write_verdicts(verdicts, rc.report)
  for v in verdicts:
    print(v.to_json())
  return aggregate_status(verdicts)


def cmd_chain(rc: RunConfig, fx: Fixture, config: dict) -> int:
  if fx.param is None:
    raise FixtureError(f"fixture {fx.id} of kind {fx.kind} has no parameterization")
  chain = chain_for_arc(fx.param, rc.epsilon, rc.lo, rc.hi, rc.max_refinements)
  write_links_csv(chain.links, rc.out, rc.delimiter)
  write_sidecar({"fixture": fx.id, "epsilon": str(rc.epsilon), "lo": str(rc.lo), "hi": str(rc.hi),
                 "links": len(chain)}, rc.out)
  if rc.svg is not None and _svg_enabled(config):
    balls = [(o, b) for o, link in enumerate(chain.links) for b in link.decoded]
    render_svg(balls, rc.svg, fx, title=f"{fx.id}: chain at epsilon={rc.epsilon}")
  print(f"Wrote chain of {len(chain)} links to {rc.out}")
  return EXIT_OK


def cmd_witnesses(rc: RunConfig, fx: Fixture, config: dict) -> int:
  indices = generate_witness_list(fx, rc.scan, rc.slack, rc.spiral_depth_cap, rc.verbose)
  write_index_list(indices, rc.out, {"fixture": fx.id, "scan": rc.scan, "slack": str(rc.slack)})
  print(f"Wrote {len(indices)} witness indices to {rc.out}")
  return EXIT_OK


COMMAND_HANDLERS = {
  "draw": cmd_draw,
  "enumerate": cmd_enumerate,
  "verify": cmd_verify,
  "chain": cmd_chain,
  "witnesses": cmd_witnesses,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
  """
  Run one command.

  Args:
      argv: Argument vector without the program name

  Returns:
      int: Exit status
  """
  parser = build_parser()
  try:
    args = parser.parse_args(argv)
  except SystemExit as e:
    return EXIT_OK if e.code == 0 else EXIT_INPUT

  if args.verbose:
    logging.getLogger().setLevel(logging.DEBUG)

  try:
    config = setup_config(args.config)
    if args.dimension is not None:
      set_dimension(args.dimension)
    rc = RunConfig.from_args(args, config)
    fx = load_fixture(rc.fixture)
    return COMMAND_HANDLERS[rc.command](rc, fx, config)
  except SearchBudgetExhausted as e:
    logger.error(f"Search budget exhausted: {e}")
    return EXIT_BUDGET
  except UndecidedAtCap as e:
    logger.error(f"Undecided at refinement cap: {e}")
    return EXIT_BUDGET
  except (ValueError, FileNotFoundError, yaml.YAMLError) as e:
    logger.error(f"Input error: {e}")
    return EXIT_INPUT
  except SystemExit as e:
    return e.code if isinstance(e.code, int) else EXIT_INPUT
