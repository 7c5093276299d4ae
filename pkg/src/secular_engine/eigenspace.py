"""
Numeric eigenspaces, evaluation maps and supports at torus points.
"""

import numpy as np
from loguru import logger

from graph_model.subgraphs import OpenSubgraph, components_after_deletion
from secular_engine.scattering import scattering_matrix, secular_polynomial
from utils.config import Config
from utils.error_handler import (
    error_handler,
    ContinuityViolated,
    NotOnSecularManifold,
    OffTorus,
    SamplingFailed,
    UnknownEdge,
)


def as_torus_point(z, n=None, tol=None):
    """
    Validate complex coordinates on the unit torus.

    Args:
        z (array-like): Coordinates.
        n (int): Expected coordinate count, if known.
        tol (float): Torus tolerance, defaults to Config.TOL_TORUS.

    Returns:
        numpy.ndarray: Complex coordinate vector.
    """
    tol = Config.TOL_TORUS if tol is None else tol
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if n is not None and z.shape != (n,):
        raise ValueError(f"expected {n} coordinates, got {z.size}")
    for j, value in enumerate(z, start=1):
        if abs(abs(value) - 1.0) > tol:
            raise OffTorus(j, abs(value))
    return z


def phase_point(k, lengths):
    """The point exp(i k l) on the torus."""
    return np.exp(1j * k * np.asarray(lengths, dtype=float))


@error_handler
def eigenspace(g, z, tol_rank=None, matrix=None):
    """
    Kernel of the scattering matrix at a torus point.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Torus point.
        tol_rank (float): Singular values below tol_rank * sigma_max count as zero.
        matrix (PolyMatrix): Prebuilt scattering matrix, optional.

    Returns:
        tuple: (dimension, list of orthonormal CoeffVectors as numpy arrays).
    """
    tol_rank = Config.TOL_RANK if tol_rank is None else tol_rank
    z = as_torus_point(z, g.n)
    matrix = matrix or scattering_matrix(g)
    _, singular, vh = np.linalg.svd(matrix.evaluate(z))
    dimension = int(np.sum(singular < tol_rank * singular[0]))
    if dimension and singular[-dimension] > Config.TOL_RESIDUAL * singular[0]:
        logger.warning(
            f"Kernel residual {singular[-dimension] / singular[0]:.2e} exceeds {Config.TOL_RESIDUAL}"
        )
    basis = [vh[-i].conj() for i in range(dimension, 0, -1)]
    return dimension, basis


def edge_value(g, j, v, phi, z):
    """Boundary value of the edge-j function at its endpoint v."""
    a, b = phi[2 * j - 2], phi[2 * j - 1]
    return a + b * z[j - 1] if g.source(j) == v else a * z[j - 1] + b


def _vertex_values(g, z, v, phi):
    return [edge_value(g, j, v, phi, z) for j in g.incident_edges(v)]


@error_handler
def eval_vertex(g, z, v, phi, tol=None):
    """
    Common boundary value of an eigenvector at a vertex.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Torus point.
        v (int): Vertex id.
        phi (array-like): Coefficients (a_1, b_1, ..., a_n, b_n).
        tol (float): Relative continuity tolerance.

    Returns:
        complex: The value taken on the least-id incident edge.
    """
    tol = Config.TOL_CONTINUITY if tol is None else tol
    z = np.asarray(z, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    values = _vertex_values(g, z, v, phi)
    spread = max(abs(x - values[0]) for x in values)
    if spread > tol * max(1.0, float(np.linalg.norm(phi))):
        raise ContinuityViolated(v, spread)
    return complex(values[0])


def project_coefficients(h, phi):
    """
    Restrict a coefficient vector to the edges in h.

    Args:
        h (iterable): Edge ids.
        phi (array-like): Coefficients (a_1, b_1, ..., a_n, b_n).

    Returns:
        numpy.ndarray: (a_j, b_j) pairs for j in h, ascending.
    """
    phi = np.asarray(phi, dtype=complex)
    n = len(phi) // 2
    columns = []
    for j in sorted(h):
        if not 1 <= j <= n:
            raise UnknownEdge(j)
        columns.extend((2 * j - 2, 2 * j - 1))
    return phi[columns]


@error_handler
def support_of_point(g, z, tol_rank=None, matrix=None):
    """
    Support and vanishing set of the z-eigenspace.

    Only Neumann vertices can vanish: Dirichlet vertices are not part of G.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Point on the secular manifold.
        tol_rank (float): Numeric rank and vanishing tolerance.
        matrix (PolyMatrix): Prebuilt scattering matrix, optional.

    Returns:
        tuple: (OpenSubgraph support, (vanishing vertices, vanishing edges)).
    """
    tol_rank = Config.TOL_RANK if tol_rank is None else tol_rank
    z = as_torus_point(z, g.n)
    dimension, basis = eigenspace(g, z, tol_rank, matrix)
    if dimension == 0:
        raise NotOnSecularManifold(f"eigenspace at {np.round(z, 6)} is trivial")

    vanishing_vertices = frozenset(
        v for v in g.neumann
        if max(abs(_vertex_values(g, z, v, phi)[0]) for phi in basis) < tol_rank
    )
    vanishing_edges = frozenset(
        j for j in g.edge_ids
        if max(np.linalg.norm(project_coefficients([j], phi)) for phi in basis) < tol_rank
    )

    kept = []
    for component in components_after_deletion(g, vanishing_vertices):
        supported = component - vanishing_edges
        if supported and supported != component:
            logger.warning(f"Component {sorted(component)} vanishes only on edges {sorted(component & vanishing_edges)}")
        if supported:
            kept.append(component)

    kept_edges = frozenset().union(*kept) if kept else frozenset()
    boundary = set()
    for v in vanishing_vertices:
        touching = [j for j in g.incident_edges(v) if j in kept_edges]
        if len(touching) == 1:
            logger.warning(f"Support boundary vertex {v} touches a single supported edge")
        if touching:
            boundary.add(v)

    support = OpenSubgraph(deleted=frozenset(boundary), kept_components=tuple(kept))
    return support, (vanishing_vertices, vanishing_edges)


def secular_gradient(g, z, p=None):
    """
    Gradient of the canonical secular polynomial at z.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Point.
        p (MultiPoly): Precomputed secular polynomial, optional.

    Returns:
        numpy.ndarray: n complex partial derivatives.
    """
    p = p or secular_polynomial(g)
    z = np.asarray(z, dtype=complex)
    return np.array([p.derivative(j).evaluate(z) for j in range(1, g.n + 1)])


def is_smooth_point(g, z, p=None, tol=None):
    """True when the gradient of P_G at z is bounded away from zero relative to ||P_G||_1."""
    tol = Config.SMOOTH_GRADIENT if tol is None else tol
    p = p or secular_polynomial(g)
    return float(np.linalg.norm(secular_gradient(g, z, p))) > tol * p.l1_norm()


def _unimodular_roots(quadratic, tol):
    roots = np.roots(quadratic) if np.any(np.abs(quadratic) > 0) else []
    return [r / abs(r) for r in roots if abs(r) > 0 and abs(abs(r) - 1.0) < tol]


def sample_torus_zero(p, rng, base, retries=None):
    """
    Random zero of p on the torus, changing only the variables of p.

    The variables of p get uniform angles, then one of them, chosen at
    random, is replaced by a unimodular root of the restricted quadratic.

    Args:
        p (MultiPoly): Polynomial of degree at most 2 per variable.
        rng (numpy.random.Generator): Random source.
        base (numpy.ndarray): Point supplying the other coordinates.
        retries (int): Attempts before giving up.

    Returns:
        numpy.ndarray or None: The point, or None when every attempt failed.
    """
    retries = retries or Config.SAMPLE_RETRIES
    variables = p.variables()
    if not variables:
        return None
    for _ in range(retries):
        z = np.array(base, dtype=complex)
        for i in variables:
            z[i - 1] = np.exp(1j * rng.uniform(0, 2 * np.pi))
        j = variables[int(rng.integers(len(variables)))]
        roots = _unimodular_roots(_restricted_quadratic(p, z, j), 1e-7)
        if not roots:
            continue
        z[j - 1] = roots[int(rng.integers(len(roots)))]
        if abs(p.evaluate(z)) < Config.SAMPLE_TOLERANCE * p.l1_norm():
            return z
    return None


@error_handler
def sample_secular_point(g, seed=None, p=None, retries=None):
    """
    Random point on the secular manifold.

    All coordinates but one are uniform on the circle; the remaining one is a
    unimodular root of the resulting quadratic.

    Args:
        g (TreeGraph): The tree.
        seed (int or numpy.random.Generator): Random source.
        p (MultiPoly): Precomputed secular polynomial, optional.
        retries (int): Attempts before giving up.

    Returns:
        numpy.ndarray: The torus point.
    """
    rng = np.random.default_rng(seed)
    p = p or secular_polynomial(g)
    retries = retries or Config.SAMPLE_RETRIES
    z = sample_torus_zero(p, rng, np.ones(g.n, dtype=complex), retries)
    if z is None:
        raise SamplingFailed(retries, "on the secular manifold")
    return z


def _restricted_quadratic(p, z, j):
    """Coefficients (highest first) of p as a polynomial in z_j with the other coordinates fixed."""
    coefficients = np.zeros(3, dtype=complex)
    for exponent, coeff in p.terms.items():
        value = coeff
        for i, e in enumerate(exponent, start=1):
            if i != j and e:
                value = value * z[i - 1] ** e
        coefficients[2 - exponent[j - 1]] += value
    return coefficients


def residual(g, z, phi, matrix=None):
    """Relative residual ||S(z) phi|| / (||S(z)|| ||phi||)."""
    matrix = matrix or scattering_matrix(g)
    evaluated = matrix.evaluate(z)
    phi = np.asarray(phi, dtype=complex)
    return float(np.linalg.norm(evaluated @ phi) / (np.linalg.norm(evaluated, 2) * np.linalg.norm(phi)))
