"""
Chain Engine Module.

This module implements the search for certified chain tuples: the tuple
types, the ray and line certification conditions, the dyadic candidate
generator and the dovetailed search.
"""

from .tuples import RayTuple, LineTuple, SearchTuple, Witness
from .certify import (
  RAY_ORDER,
  LINE_ORDER,
  ray_formal_failure,
  ray_first_failure,
  ray_certify,
  line_formal_failure,
  line_first_failure,
  line_certify,
)
from .candidates import CandidateGenerator, cell_ball, cell_box, cell_radius
from .search import (
  ChainSearch,
  SearchBudgetExhausted,
  SearchInputs,
  SearchLimits,
  anchor_from_endpoint,
  anchor_near_endpoint,
  propose_candidates,
  search,
)

__version__ = '0.1.0'

__all__ = [
  'RayTuple',
  'LineTuple',
  'SearchTuple',
  'Witness',
  'RAY_ORDER',
  'LINE_ORDER',
  'ray_formal_failure',
  'ray_first_failure',
  'ray_certify',
  'line_formal_failure',
  'line_first_failure',
  'line_certify',
  'CandidateGenerator',
  'cell_ball',
  'cell_box',
  'cell_radius',
  'ChainSearch',
  'SearchBudgetExhausted',
  'SearchInputs',
  'SearchLimits',
  'anchor_from_endpoint',
  'anchor_near_endpoint',
  'propose_candidates',
  'search',
]
