"""
CLI Module.

This module implements the command-line surface: run configuration,
argument parsing and the draw, enumerate, verify, chain and witnesses
commands.
"""

from .run_config import RunConfig, parse_count
from .commands import build_parser, run

__version__ = '0.1.0'

__all__ = [
  'RunConfig',
  'parse_count',
  'build_parser',
  'run',
]
