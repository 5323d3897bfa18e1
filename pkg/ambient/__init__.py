"""
Ambient Module.

This module fixes the ambient computable metric space to R^n and provides
the codings of rational points, balls, finite sequences and finite sets.
"""

from .codings import (
  get_dimension,
  set_dimension,
  pair,
  unpair,
  decode_rational,
  encode_rational,
  decode_positive,
  encode_positive,
  decode_point,
  encode_point,
  decode_ball,
  encode_ball,
  encode_seq,
  decode_code,
  code_length,
  code_members,
  encode_finite_set,
  union_code,
)
from .types import (
  Point,
  Ball,
  SetCode,
  parse_rational,
  format_rational,
  vsub,
  vadd,
  vscale,
  dot,
  dist2,
  norm1,
)

__version__ = '0.1.0'

__all__ = [
  'get_dimension',
  'set_dimension',
  'pair',
  'unpair',
  'decode_rational',
  'encode_rational',
  'decode_positive',
  'encode_positive',
  'decode_point',
  'encode_point',
  'decode_ball',
  'encode_ball',
  'encode_seq',
  'decode_code',
  'code_length',
  'code_members',
  'encode_finite_set',
  'union_code',
  'Point',
  'Ball',
  'SetCode',
  'parse_rational',
  'format_rational',
  'vsub',
  'vadd',
  'vscale',
  'dot',
  'dist2',
  'norm1',
]
