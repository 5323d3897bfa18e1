"""
Run configuration for the Certified Chain Cover Engine command line.

Flags are parsed into a RunConfig before any computation starts; invalid
combinations raise ValueError, which the command line reports as an input
error.
"""

import logging
import re
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from ambient.types import Point, parse_rational
from chain_engine.search import SearchLimits
from utils.config_loader import get_config_value

logger = logging.getLogger(__name__)

COMMANDS = ("draw", "enumerate", "verify", "chain", "witnesses")


def parse_count(text: Any) -> int:
  """
  Parse a natural count: "1000", "10^6" or "10^6-steps".

  Raises:
      ValueError: If the text is not a natural count
  """
  if isinstance(text, int) and not isinstance(text, bool):
    value = text
  else:
    body = str(text).strip()
    body = re.sub(r"-?steps$", "", body)
    match = re.fullmatch(r"(\d+)(?:\^(\d+))?", body)
    if not match:
      raise ValueError(f"expected a count like 1000 or 10^6, got {text!r}")
    base, exponent = match.groups()
    value = int(base) ** int(exponent) if exponent is not None else int(base)
  if value < 0:
    raise ValueError(f"count must be nonnegative, got {value}")
  return value


@dataclass(frozen=True)
class RunConfig:
  """One validated command-line run."""

  command: str
  fixture: Path
  mode: Optional[str] = None
  anchor: Optional[Point] = None
  n: Optional[int] = None
  k: Optional[int] = None
  limits: SearchLimits = SearchLimits()
  out: Optional[Path] = None
  svg: Optional[Path] = None
  cover: Optional[Path] = None
  emissions: Optional[Path] = None
  witnesses: Optional[Path] = None
  report: Optional[Path] = None
  limit: int = 50
  budget: int = 1000000
  index_step: int = 500
  epsilon: Optional[Fraction] = None
  lo: Optional[Fraction] = None
  hi: Optional[Fraction] = None
  scan: int = 5000
  slack: Fraction = Fraction(1, 8)
  dimension: int = 2
  delimiter: str = ","
  depth_cap: int = 48
  spiral_depth_cap: int = 40
  max_refinements: int = 12
  verbose: bool = False

  def __post_init__(self):
    if self.command not in COMMANDS:
      raise ValueError(f"unknown command {self.command!r}")
    if self.mode is not None and self.mode not in ("ray", "line"):
      raise ValueError(f"mode must be ray or line, got {self.mode!r}")
    if self.dimension < 1:
      raise ValueError(f"dimension must be positive, got {self.dimension}")
    if self.anchor is not None and len(self.anchor) != self.dimension:
      raise ValueError(f"anchor has {len(self.anchor)} coordinates, dimension is {self.dimension}")
    for name in ("n", "k"):
      value = getattr(self, name)
      if value is not None and value < 0:
        raise ValueError(f"--{name} must be a natural, got {value}")
    if self.command == "draw":
      if self.n is None or self.k is None:
        raise ValueError("draw needs --n and --k")
      if self.out is None:
        raise ValueError("draw needs --out")
      if self.mode == "line" and self.n < 1:
        raise ValueError("line drawings need --n >= 1")
    if self.command == "enumerate":
      if self.out is None:
        raise ValueError("enumerate needs --out")
      if self.index_step < 1:
        raise ValueError("--index-step must be positive")
    if self.command == "verify":
      if (self.cover is None) == (self.emissions is None):
        raise ValueError("verify needs exactly one of --cover and --emissions")
      if self.emissions is not None and self.witnesses is None:
        raise ValueError("verify --emissions needs --witnesses")
    if self.command == "chain":
      if self.epsilon is None or self.epsilon <= 0:
        raise ValueError("chain needs a positive --epsilon")
      if self.out is None:
        raise ValueError("chain needs --out")
    if self.command == "witnesses":
      if self.out is None:
        raise ValueError("witnesses needs --out")
      if self.slack < 0:
        raise ValueError("--slack must be nonnegative")

  @classmethod
  def from_args(cls, args, config: Dict[str, Any]) -> "RunConfig":
    """
    Merge parsed flags over the configuration file.

    Raises:
        ValueError: For malformed values or invalid combinations
    """
    limits = SearchLimits.from_config(config)
    overrides = {}
    if getattr(args, "stage_cap", None) is not None:
      overrides["stage_cap"] = args.stage_cap
    if getattr(args, "step_budget", None) is not None:
      overrides["step_budget"] = parse_count(args.step_budget)
    if getattr(args, "workers", None) is not None:
      overrides["workers"] = args.workers
    if getattr(args, "pure_naturals", False):
      overrides["pure_naturals"] = True
    if overrides:
      limits = replace(limits, **overrides)
    if limits.workers < 1 or limits.stage_cap < 0:
      raise ValueError("workers must be at least 1 and the stage cap a natural")

    def path(name: str) -> Optional[Path]:
      value = getattr(args, name, None)
      return Path(value) if value else None

    def rational(name: str) -> Optional[Fraction]:
      value = getattr(args, name, None)
      return parse_rational(value) if value is not None else None

    dimension = args.dimension or get_config_value(config, "general.dimension", 2)
    anchor = getattr(args, "anchor", None)
    budget = getattr(args, "budget", None)
    slack = getattr(args, "slack", None)
    return cls(
      command=args.command,
      fixture=Path(args.fixture),
      mode=getattr(args, "mode", None),
      anchor=Point.parse(anchor) if anchor else None,
      n=getattr(args, "n", None),
      k=getattr(args, "k", None),
      limits=limits,
      out=path("out"),
      svg=path("svg"),
      cover=path("cover"),
      emissions=path("emissions"),
      witnesses=path("witnesses"),
      report=path("report"),
      limit=getattr(args, "limit", None) or 50,
      budget=parse_count(budget) if budget is not None else get_config_value(config, "enumerators.budget", 1000000),
      index_step=getattr(args, "index_step", None) or get_config_value(config, "enumerators.index_step", 500),
      epsilon=rational("epsilon"),
      lo=rational("lo"),
      hi=rational("hi"),
      scan=getattr(args, "scan", None) or get_config_value(config, "verify.witness_scan", 5000),
      slack=parse_rational(slack if slack is not None else get_config_value(config, "verify.slack", "1/8")),
      dimension=dimension,
      delimiter=get_config_value(config, "cli.csv.delimiter", ","),
      depth_cap=get_config_value(config, "geometry_oracle.cover.depth_cap", 48),
      spiral_depth_cap=get_config_value(config, "geometry_oracle.spiral.depth_cap", 40),
      max_refinements=get_config_value(config, "geometry_oracle.chain.max_refinements", 12),
      verbose=bool(getattr(args, "verbose", False)),
    )
