"""
Main entry point for circle-rep
"""

import logging

from config import current_config
from src.cli import run

logger = logging.getLogger(__name__)


def main() -> int:
    """Run the command line interface"""
    logger.debug(f"Environment: {current_config.__class__.__name__}")
    return run()


if __name__ == "__main__":
    raise SystemExit(main())
