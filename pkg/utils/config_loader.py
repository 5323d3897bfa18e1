"""
Configuration loader for the Certified Chain Cover Engine.

This module provides functions for loading and validating configuration files.
"""

import sys
import logging
import yaml
from pathlib import Path
from typing import Dict, Any, List, Optional

from ambient.codings import set_dimension
from ambient.types import parse_rational

# Setup logging
logger = logging.getLogger(__name__)

# Default configuration file path
DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config.yaml"

# Exit status for input errors
EXIT_INPUT_ERROR = 3

# joblib backends the chain search can certify on
PARALLEL_BACKENDS = ("threading", "loky", "multiprocessing")

REQUIRED_SECTIONS = [
  "general",
  "geometry_oracle",
  "chain_engine",
  "enumerators",
  "verify",
  "cli",
]

def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
  """
  Load configuration from a YAML file.

  Args:
      config_path (str, optional): Path to the configuration file.
          If None, the default configuration will be used.

  Returns:
      dict: Configuration dictionary

  Raises:
      FileNotFoundError: If the configuration file doesn't exist
      yaml.YAMLError: If the configuration file has invalid YAML syntax
  """
  # Use default config if not specified
  if config_path is None:
    config_path = DEFAULT_CONFIG_PATH
  else:
    config_path = Path(config_path)

  logger.info(f"Loading configuration from {config_path}")

  if not config_path.exists():
    logger.error(f"Configuration file not found: {config_path}")
    raise FileNotFoundError(f"Configuration file not found: {config_path}")

  try:
    with open(config_path, 'r') as f:
      config = yaml.safe_load(f)

    logger.info("Configuration loaded successfully")
    return config or {}
  except yaml.YAMLError as e:
    logger.error(f"Error parsing configuration file: {e}")
    raise

def _problems(config: Dict[str, Any]) -> List[str]:
  problems = []
  dimension = get_config_value(config, "general.dimension", 2)
  if not isinstance(dimension, int) or dimension < 1:
    problems.append(f"general.dimension must be a positive integer, got {dimension!r}")
  for key in ("chain_engine.step_budget", "enumerators.budget", "enumerators.index_step",
              "verify.witness_scan", "geometry_oracle.spiral.depth_cap", "geometry_oracle.cover.depth_cap"):
    value = get_config_value(config, key, 1)
    if not isinstance(value, int) or value < 1:
      problems.append(f"{key} must be a positive integer, got {value!r}")
  stage_cap = get_config_value(config, "chain_engine.stage_cap", 0)
  if not isinstance(stage_cap, int) or stage_cap < 0:
    problems.append(f"chain_engine.stage_cap must be a natural, got {stage_cap!r}")
  workers = get_config_value(config, "general.processing.max_workers", 1)
  if not isinstance(workers, int) or workers < 1:
    problems.append(f"general.processing.max_workers must be at least 1, got {workers!r}")
  backend = get_config_value(config, "chain_engine.parallel.backend", "threading")
  if backend not in PARALLEL_BACKENDS:
    problems.append(f"chain_engine.parallel.backend must be one of {', '.join(PARALLEL_BACKENDS)}, got {backend!r}")
  slack = get_config_value(config, "verify.slack", "1/8")
  try:
    if parse_rational(slack) < 0:
      problems.append(f"verify.slack must be nonnegative, got {slack!r}")
  except ValueError as e:
    problems.append(f"verify.slack: {e}")
  return problems

def validate_config(config: Dict[str, Any]) -> bool:
  """
  Validate the configuration.

  Args:
      config (dict): Configuration dictionary

  Returns:
      bool: True if the configuration is valid, False otherwise
  """
  if not isinstance(config, dict):
    logger.error("Configuration must be a mapping")
    return False

  missing_sections = [section for section in REQUIRED_SECTIONS if section not in config]
  if missing_sections:
    logger.error(f"Missing configuration sections: {', '.join(missing_sections)}")
    return False

  problems = _problems(config)
  for problem in problems:
    logger.error(f"Invalid configuration: {problem}")
  if problems:
    return False

  logger.info("Configuration validation successful")
  return True

def get_config_value(config: Dict[str, Any], key_path: str, default: Any = None) -> Any:
  """
  Get a value from the configuration using a dot-separated path.

  Args:
      config (dict): Configuration dictionary
      key_path (str): Dot-separated path to the configuration value
      default (any, optional): Default value if the key doesn't exist

  Returns:
      any: The configuration value or the default value
  """
  keys = key_path.split(".")
  value = config

  for key in keys:
    if isinstance(value, dict) and key in value:
      value = value[key]
    else:
      logger.warning(f"Configuration key not found: {key_path}")
      return default

  return value

def create_directories(config: Dict[str, Any]) -> None:
  """
  Create directories specified in the configuration.

  Args:
      config (dict): Configuration dictionary
  """
  directories = get_config_value(config, "general.directories", {})

  for name, path in directories.items():
    dir_path = Path(path)
    if not dir_path.exists():
      logger.info(f"Creating directory: {dir_path}")
      dir_path.mkdir(parents=True, exist_ok=True)

def setup_config(config_path: Optional[str] = None) -> Dict[str, Any]:
  """
  Load, validate, and set up the configuration.

  Applies the ambient dimension as a side effect.

  Args:
      config_path (str, optional): Path to the configuration file

  Returns:
      dict: Validated configuration dictionary
  """
  config = load_config(config_path)

  if not validate_config(config):
    logger.error("Configuration validation failed")
    sys.exit(EXIT_INPUT_ERROR)

  create_directories(config)
  set_dimension(get_config_value(config, "general.dimension", 2))

  return config
