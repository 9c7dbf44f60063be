"""
Configuration management for circle-rep
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
env_path = Path(__file__).parent.parent / ".env"
load_dotenv(env_path)


class Config:
    """Application configuration"""

    # Grids
    GRID_SIZE = int(os.getenv("CIRCLEREP_GRID_SIZE", "4096"))
    STIELTJES_BINS = int(os.getenv("CIRCLEREP_STIELTJES_BINS", "4096"))

    # Tolerances
    ANTIPODAL_TOL = float(os.getenv("CIRCLEREP_ANTIPODAL_TOL", "1e-9"))
    RECONSTRUCTION_TOL_PL = float(os.getenv("CIRCLEREP_RECONSTRUCTION_TOL_PL", "1e-9"))
    RECONSTRUCTION_TOL_SMOOTH = float(os.getenv("CIRCLEREP_RECONSTRUCTION_TOL_SMOOTH", "1e-4"))
    ANTISYMMETRY_TOL = float(os.getenv("CIRCLEREP_ANTISYMMETRY_TOL", "1e-10"))
    ATOM_MERGE_TOL = float(os.getenv("CIRCLEREP_ATOM_MERGE_TOL", "1e-12"))

    # Total variation refinement for smooth functions
    TV_REL_TOL = float(os.getenv("CIRCLEREP_TV_REL_TOL", "1e-8"))
    TV_INITIAL_SAMPLES = int(os.getenv("CIRCLEREP_TV_INITIAL_SAMPLES", "256"))
    TV_MAX_SAMPLES = int(os.getenv("CIRCLEREP_TV_MAX_SAMPLES", str(2 ** 22)))

    # Derivative spot checks
    FD_STEP = float(os.getenv("CIRCLEREP_FD_STEP", "1e-6"))
    FD_TOL = float(os.getenv("CIRCLEREP_FD_TOL", "1e-4"))

    # Transport
    LP_CAP = int(os.getenv("CIRCLEREP_LP_CAP", "1000000"))

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    TESTING = False


class TestingConfig(Config):
    """Testing configuration"""
    DEBUG = True
    TESTING = True
    LOG_LEVEL = "DEBUG"


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    TESTING = False


# Get current config
current_env = os.getenv("ENVIRONMENT", "development").lower()
if current_env == "production":
    current_config = ProductionConfig()
elif current_env == "testing":
    current_config = TestingConfig()
else:
    current_config = DevelopmentConfig()
