"""
Utilities Module.

This module provides configuration helpers used throughout the chain cover engine.
"""

from .config_loader import load_config, validate_config, get_config_value, create_directories, setup_config

__version__ = '0.1.0'

__all__ = [
  'load_config',
  'validate_config',
  'get_config_value',
  'create_directories',
  'setup_config',
]
