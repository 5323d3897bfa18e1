"""
Enumerators Module.

This module implements the user-facing procedures: certified drawing of
rays and lines, the stream of balls meeting the set, the manifold
reductions and the cover file formats.
"""

from .draw import CertifiedCover, draw
from .stream import enumerate_intersecting, first_emissions
from .manifolds import compact_component_cover, boundary_point
from .export import (
  write_links_csv,
  read_links_csv,
  write_cover,
  write_sidecar,
  read_sidecar,
  write_emissions_csv,
  read_emissions_csv,
  write_index_list,
  read_index_list,
  render_svg,
)

__version__ = '0.1.0'

__all__ = [
  'CertifiedCover',
  'draw',
  'enumerate_intersecting',
  'first_emissions',
  'compact_component_cover',
  'boundary_point',
  'write_links_csv',
  'read_links_csv',
  'write_cover',
  'write_sidecar',
  'read_sidecar',
  'write_emissions_csv',
  'read_emissions_csv',
  'write_index_list',
  'read_index_list',
  'render_svg',
]
