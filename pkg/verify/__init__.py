"""
Verify Module.

This module implements the independent checks of certified artifacts
against exact fixture geometry, and the witness lists used to measure
enumeration completeness.
"""

from .verdicts import (
  PASS,
  FAIL,
  UNDECIDED,
  Verdict,
  verify_links,
  verify_cover,
  verify_stream,
  write_verdicts,
  aggregate_status,
)
from .witness_lists import generate_witness_list

__version__ = '0.1.0'

__all__ = [
  'PASS',
  'FAIL',
  'UNDECIDED',
  'Verdict',
  'verify_links',
  'verify_cover',
  'verify_stream',
  'write_verdicts',
  'aggregate_status',
  'generate_witness_list',
]
