"""
Secular engine: scattering matrices, secular polynomials and eigenspaces.
"""

from .multipoly import MultiPoly, format_polynomial, parse_polynomial
from .scattering import (
    PolyMatrix,
    scattering_matrix,
    cofactor_determinant,
    fraction_free_determinant,
    determinant,
    secular_polynomial,
    has_degree_two,
)
from .eigenspace import (
    as_torus_point,
    phase_point,
    eigenspace,
    edge_value,
    eval_vertex,
    project_coefficients,
    support_of_point,
    secular_gradient,
    is_smooth_point,
    sample_torus_zero,
    sample_secular_point,
    residual,
)
