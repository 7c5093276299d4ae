"""
Utility modules for the tree spectra toolkit.
"""

from .config import setup_logging, Config
from .error_handler import (
    error_handler,
    TreeSpectraError,
    GraphError,
    SecularError,
    StrataError,
    CohomologyError,
    SpectrumError,
    CommandError,
    CrossCheckError,
)
