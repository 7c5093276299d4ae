"""
Configuration utilities for the tree spectra toolkit.
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv
from loguru import logger


load_dotenv()


def setup_logging(level="INFO"):
    """
    Set up logging configuration for the application.

    Args:
        level (str): Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
    """
    logs_dir = Path(__file__).parents[2] / "logs"
    logs_dir.mkdir(exist_ok=True)

    logger.remove()

    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
    )

    logger.add(
        logs_dir / "tree_spectra_{time:YYYY-MM-DD}.log",
        rotation="00:00",
        retention="7 days",
        level="DEBUG",
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
        backtrace=True,
        diagnose=True
    )

    logger.debug(f"Logging initialized with level {level}")


def get_project_root():
    """
    Get the project root directory.

    Returns:
        Path: Path to the project root directory.
    """
    return Path(__file__).parents[2]


def _env_float(name, default):
    value = os.environ.get(f"TREESPEC_{name}")
    return float(value) if value else default


def _env_int(name, default):
    value = os.environ.get(f"TREESPEC_{name}")
    return int(value) if value else default


class Config:
    """Configuration constants for the application."""

    PROJECT_ROOT = get_project_root()

    # Torus membership and numeric rank
    TOL_TORUS = _env_float("TOL_TORUS", 1e-9)
    TOL_RANK = _env_float("TOL_RANK", 1e-8)
    TOL_RESIDUAL = _env_float("TOL_RESIDUAL", 1e-10)
    TOL_CONTINUITY = 1e-8
    SMOOTH_GRADIENT = 1e-6

    # Stratum sampling
    SAMPLE_TOLERANCE = 1e-10
    SAMPLE_AVOIDANCE = 1e-6
    SAMPLE_RETRIES = _env_int("SAMPLE_RETRIES", 100)
    COVER_DRAWS = 3

    # Spectrum scan
    TOL_ROOT = _env_float("TOL_ROOT", 1e-9)
    GRID_POINTS_PER_GAP = 8
    SPECTRUM_ACCEPT = 1e-6
    POLY_RESIDUAL = 1e-6
    MERGE_FACTOR = 10
    MULTIPLICITY_FACTOR = 1000
    STEP_HALVINGS = 4
    SIGN_FLOOR = 1e-9
    RESCAN_POINTS = 17
    RESCAN_DEPTH = 4

    # Length sampling for rationally dependent families
    LENGTH_BOX = 1.0
    MIN_LENGTH_RATIO = 0.05
    LENGTH_ATTEMPTS = 10000

    # Exact determinants
    COFACTOR_MAX_EDGES = 8

    # Verification suites
    VERIFY_AGREEMENT = 0.95
    RECONSTRUCTION_TOLERANCE = 1e-8

    # Service
    API_HOST = os.environ.get("TREESPEC_API_HOST", "0.0.0.0")
    API_PORT = _env_int("API_PORT", 8000)
