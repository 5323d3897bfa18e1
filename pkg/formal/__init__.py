"""
Formal Predicates Module.

This module implements the code-level predicates: formal diameter and mesh,
formal disjointness, formal containment and formal chains.
"""

from .distance import DistanceExpr, sqrt_lower, sqrt_upper
from .predicates import (
  as_balls,
  fdiam_lt,
  fdiam_upper,
  balls_formally_disjoint,
  formally_disjoint,
  formally_contained,
  code_formally_contained_in_ball,
  code_inside_code,
  refinement_epsilon,
)
from .chains import (
  FormalChain,
  is_formal_chain,
  fmesh_lt,
  disjoint_from_chain,
  segment_contained,
)

__version__ = '0.1.0'

__all__ = [
  'DistanceExpr',
  'sqrt_lower',
  'sqrt_upper',
  'as_balls',
  'fdiam_lt',
  'fdiam_upper',
  'balls_formally_disjoint',
  'formally_disjoint',
  'formally_contained',
  'code_formally_contained_in_ball',
  'code_inside_code',
  'refinement_epsilon',
  'FormalChain',
  'is_formal_chain',
  'fmesh_lt',
  'disjoint_from_chain',
  'segment_contained',
]
