"""
Geometry Oracle Module.

This module implements the exact fixture geometry: fixture loading and
validation, exact intersection and cover decisions, fixture-backed
presentations and the constructive chain builder.
"""

from .surds import QuadraticSurd, sign_surd, sign_two_surds, quadratic_solutions, closed_covered_by_open
from .pieces import (
  Piece,
  ParamPiece,
  PointPiece,
  Disk,
  Segment,
  RayPiece,
  ArcPiece,
  SpiralPiece,
  UndecidedAtCap,
  piece_meets_ball,
)
from .fixtures import (
  Fixture,
  FixtureError,
  LineAnchorHint,
  Parameterization,
  fixture_from_dict,
  load_fixture,
  dumps_fixture,
  validate_hint,
)
from .exact import DEFAULT_DEPTH_CAP, DEFAULT_SPIRAL_DEPTH_CAP, exact_intersects, exact_cover_check, piece_covered, union_diameter_lt
from .presentation import FixturePresentation, fixture_presentation, pieces_meeting_box, region_covered
from .arcs import (
  ArcChain,
  CoverPredicate,
  build_arc_chain,
  chain_for_arc,
  contained_span,
  cover_enumerator,
  segment_distance2,
  subarc_distance_lower,
)

__version__ = '0.1.0'

__all__ = [
  'QuadraticSurd',
  'sign_surd',
  'sign_two_surds',
  'quadratic_solutions',
  'closed_covered_by_open',
  'Piece',
  'ParamPiece',
  'PointPiece',
  'Disk',
  'Segment',
  'RayPiece',
  'ArcPiece',
  'SpiralPiece',
  'UndecidedAtCap',
  'piece_meets_ball',
  'Fixture',
  'FixtureError',
  'LineAnchorHint',
  'Parameterization',
  'fixture_from_dict',
  'load_fixture',
  'dumps_fixture',
  'validate_hint',
  'DEFAULT_DEPTH_CAP',
  'DEFAULT_SPIRAL_DEPTH_CAP',
  'exact_intersects',
  'exact_cover_check',
  'piece_covered',
  'union_diameter_lt',
  'FixturePresentation',
  'fixture_presentation',
  'pieces_meeting_box',
  'region_covered',
  'ArcChain',
  'CoverPredicate',
  'build_arc_chain',
  'chain_for_arc',
  'contained_span',
  'cover_enumerator',
  'segment_distance2',
  'subarc_distance_lower',
]
