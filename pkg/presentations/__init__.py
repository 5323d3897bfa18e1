"""
Presentations Module.

This module implements the oracle model for closed sets, the queries
derived from it and the conversions between presentations.
"""

from .base import (
  Answer,
  PresentedSet,
  CompactCover,
  CallablePresentation,
  ComputablePointSeq,
  CoCePresentation,
)
from .subdivision import BallGrid, closed_ball_in_code, closed_region_in_balls
from .queries import (
  covers,
  far_ball,
  intersect_empty,
  complement_enum,
  point_in_code,
  point_from_singleton,
)
from .conversions import from_coce, from_semicompact

__version__ = '0.1.0'

__all__ = [
  'Answer',
  'PresentedSet',
  'CompactCover',
  'CallablePresentation',
  'ComputablePointSeq',
  'CoCePresentation',
  'BallGrid',
  'closed_ball_in_code',
  'closed_region_in_balls',
  'covers',
  'far_ball',
  'intersect_empty',
  'complement_enum',
  'point_in_code',
  'point_from_singleton',
  'from_coce',
  'from_semicompact',
]
