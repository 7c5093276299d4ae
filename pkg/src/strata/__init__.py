"""
Strata of the singular locus, multiplicities and eigenvector reconstruction.
"""

from .stratum import (
    Stratum,
    component_graph,
    build_stratum,
    singular_components,
    strata_containing,
    format_stratum,
    format_strata_report,
)
from .sampling import sample_stratum
from .multiplicity import (
    MultiplicityCheck,
    VerificationSummary,
    predicted_multiplicity,
    verify_multiplicity,
    special_vertices,
    reconstruct_eigenvector,
    reconstruction_applicable,
    align_phase,
    relative_error,
    run_verification,
)
