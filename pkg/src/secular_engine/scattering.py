"""
Edge scattering matrix and exact secular polynomial.
"""

from functools import lru_cache

import numpy as np
import sympy
from loguru import logger
from sympy.polys.matrices import DomainMatrix

from secular_engine.multipoly import MultiPoly
from utils.config import Config
from utils.error_handler import error_handler, DegenerateSystem


class PolyMatrix:
    """
    Square 2n x 2n matrix whose entry (r, c) is const[r, c] + linear[r, c] * z_j,
    where j is the edge owning column c (columns a_1, b_1, ..., a_n, b_n).
    """

    def __init__(self, n, const, linear, row_labels=None):
        self.n = n
        self.const = np.asarray(const, dtype=int)
        self.linear = np.asarray(linear, dtype=int)
        self.row_labels = row_labels or []
        self.size = 2 * n
        # edge (1-based) owning each column
        self.column_edges = np.repeat(np.arange(1, n + 1), 2)

    @property
    def shape(self):
        return self.const.shape

    def entry(self, r, c):
        """Entry (r, c) as a MultiPoly of degree at most 1."""
        p = MultiPoly.constant(self.n, int(self.const[r, c]))
        coeff = int(self.linear[r, c])
        if coeff:
            p = p + MultiPoly.variable(self.n, int(self.column_edges[c]), coeff)
        return p

    def is_zero_entry(self, r, c):
        return self.const[r, c] == 0 and self.linear[r, c] == 0

    def evaluate(self, z):
        """
        Numeric matrix at a point, or a stack of matrices for points of shape (m, n).

        Args:
            z (array-like): Complex coordinates.

        Returns:
            numpy.ndarray: Complex matrix (or stack).
        """
        z = np.asarray(z, dtype=complex)
        columns = z[..., self.column_edges - 1]
        return self.const + self.linear * columns[..., None, :]


def _eval_coefficients(n, j, at_source):
    """(a_j, b_j) coefficient pairs of the boundary value on edge j: const and z_j parts."""
    # a + b z at the source, a z + b at the target
    if at_source:
        return {2 * j - 2: (1, 0), 2 * j - 1: (0, 1)}
    return {2 * j - 2: (0, 1), 2 * j - 1: (1, 0)}


def _derivative_coefficients(n, j, at_source):
    # (a - b z) at the source, (a z - b) at the target, after dividing by ik
    if at_source:
        return {2 * j - 2: (1, 0), 2 * j - 1: (0, -1)}
    return {2 * j - 2: (0, 1), 2 * j - 1: (-1, 0)}


@error_handler
def scattering_matrix(g):
    """
    Build the edge scattering matrix from the vertex conditions.

    Rows follow vertices in id order. A Neumann vertex of degree d gives d-1
    continuity rows between consecutive incident edges followed by one
    current row; a Dirichlet vertex gives one vanishing row per incident edge.

    Args:
        g (TreeGraph): The tree.

    Returns:
        PolyMatrix: The 2n x 2n matrix.
    """
    n = g.n
    rows = []
    labels = []

    def add_row(parts, label):
        const = np.zeros(2 * n, dtype=int)
        linear = np.zeros(2 * n, dtype=int)
        for sign, coefficients in parts:
            for column, (c0, c1) in coefficients.items():
                const[column] += sign * c0
                linear[column] += sign * c1
        rows.append((const, linear))
        labels.append(label)

    for v in g.vertex_ids:
        incident = g.incident_edges(v)
        if g.is_dirichlet(v):
            for j in incident:
                add_row([(1, _eval_coefficients(n, j, g.source(j) == v))], f"dirichlet v{v} e{j}")
            continue

        for first, second in zip(incident, incident[1:]):
            add_row(
                [
                    (1, _eval_coefficients(n, first, g.source(first) == v)),
                    (-1, _eval_coefficients(n, second, g.source(second) == v)),
                ],
                f"continuity v{v} e{first}=e{second}",
            )

        orientation = 1 if g.source(incident[0]) == v else -1
        parts = []
        for j in incident:
            at_source = g.source(j) == v
            parts.append((orientation * (1 if at_source else -1), _derivative_coefficients(n, j, at_source)))
        add_row(parts, f"current v{v}")

    const = np.array([r[0] for r in rows])
    linear = np.array([r[1] for r in rows])
    if const.shape != (2 * n, 2 * n):
        raise DegenerateSystem(f"scattering matrix has shape {const.shape}, expected {(2 * n, 2 * n)}")
    logger.debug(f"Scattering matrix {const.shape[0]}x{const.shape[1]} for n={n}")
    return PolyMatrix(n, const, linear, labels)


def cofactor_determinant(matrix):
    """
    Exact determinant by Laplace expansion along rows, memoized on column subsets.

    Args:
        matrix (PolyMatrix): The matrix.

    Returns:
        MultiPoly: The determinant.
    """
    size = matrix.size
    entries = {
        (r, c): matrix.entry(r, c)
        for r in range(size)
        for c in range(size)
        if not matrix.is_zero_entry(r, c)
    }
    row_columns = [[c for c in range(size) if (r, c) in entries] for r in range(size)]
    zero = MultiPoly(matrix.n)
    one = MultiPoly.constant(matrix.n, 1)

    @lru_cache(maxsize=None)
    def minor(mask):
        # mask holds the columns still available; the row is fixed by its popcount
        r = size - bin(mask).count("1")
        if r == size:
            return one
        total = zero
        for c in row_columns[r]:
            if not mask >> c & 1:
                continue
            rest = minor(mask & ~(1 << c))
            if rest.is_zero():
                continue
            # sign of column c among the remaining ones
            position = bin(mask & ((1 << c) - 1)).count("1")
            term = entries[(r, c)] * rest
            total = total - term if position % 2 else total + term
        return total

    result = minor((1 << size) - 1)
    minor.cache_clear()
    return result


def _symbols(n):
    return sympy.symbols(f"z1:{n + 1}")


@error_handler
def fraction_free_determinant(matrix):
    """
    Exact determinant by fraction-free elimination over ZZ[z_1..z_n].

    Args:
        matrix (PolyMatrix): The matrix.

    Returns:
        MultiPoly: The determinant.
    """
    n = matrix.n
    z = _symbols(n)
    ring = sympy.ZZ[z]
    rows = []
    for r in range(matrix.size):
        row = []
        for c in range(matrix.size):
            expr = int(matrix.const[r, c]) + int(matrix.linear[r, c]) * z[matrix.column_edges[c] - 1]
            row.append(ring.from_sympy(expr))
        rows.append(row)
    det = DomainMatrix(rows, (matrix.size, matrix.size), ring).det()
    poly = sympy.Poly(ring.to_sympy(det), *z)
    return MultiPoly(n, {monom: int(coeff) for monom, coeff in poly.terms() if coeff})


def determinant(matrix, method="auto"):
    """
    Exact determinant with the chosen algorithm.

    Args:
        matrix (PolyMatrix): The matrix.
        method (str): "cofactor", "fraction_free" or "auto".

    Returns:
        MultiPoly: The determinant.
    """
    if method == "auto":
        method = "cofactor" if matrix.n <= Config.COFACTOR_MAX_EDGES else "fraction_free"
    if method == "cofactor":
        return cofactor_determinant(matrix)
    if method == "fraction_free":
        return fraction_free_determinant(matrix)
    raise ValueError(f"unknown determinant method '{method}'")


@error_handler
def secular_polynomial(g, method="auto"):
    """
    Canonical secular polynomial of a tree.

    Args:
        g (TreeGraph): The tree.
        method (str): Determinant algorithm, see determinant().

    Returns:
        MultiPoly: Canonical determinant of the scattering matrix.
    """
    raw = determinant(scattering_matrix(g), method)
    if raw.is_zero():
        raise DegenerateSystem("scattering determinant vanishes identically")
    p = raw.canonical()
    logger.debug(f"Secular polynomial with {len(p.terms)} terms (raw content {raw.content()})")
    return p


def has_degree_two(p, edge_ids):
    """True when p has degree exactly 2 in every listed variable."""
    return all(p.degree_in(j) == 2 for j in edge_ids)
