"""
Tests package initialization
"""

import logging
import os

# Testing tolerances and DEBUG logging from config
os.environ.setdefault("ENVIRONMENT", "testing")

# Setup logging for tests
logging.basicConfig(level=logging.DEBUG)
