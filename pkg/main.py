#!/usr/bin/env python3
"""
Main script for the Certified Chain Cover Engine.
"""

import sys
import logging

from cli import run

# Set up logging
logging.basicConfig(
  level=logging.INFO,
  format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)

def main():
  """Main entry point."""
  return run(sys.argv[1:])

if __name__ == "__main__":
  sys.exit(main())
