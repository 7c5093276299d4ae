"""
Numeric spectra, mingap estimates and genericity trials.
"""

from .scanner import (
    SpectrumEntry,
    SpectrumReport,
    SpectrumScanner,
    check_lengths,
    default_step,
    compute_spectrum,
    mingap_estimate,
    weyl_count,
    format_spectrum,
    parse_spectrum,
)
from .genericity import (
    GenericityResult,
    positive_cone_feasible,
    sample_lengths,
    spectrum_with_retries,
    genericity_trial,
)
