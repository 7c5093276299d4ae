"""
Multiplicity formula checks and eigenvector reconstruction by propagation.
"""

from collections import namedtuple
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from loguru import logger
from tqdm import tqdm

from secular_engine.eigenspace import (
    as_torus_point,
    eigenspace,
    sample_secular_point,
    support_of_point,
)
from secular_engine.scattering import scattering_matrix, secular_polynomial
from strata.sampling import sample_stratum
from strata.stratum import singular_components
from utils.config import Config
from utils.error_handler import (
    error_handler,
    NotOnSecularManifold,
    SamplingFailed,
    StrataError,
    TreeSpectraError,
    VanishingVertex,
)

MultiplicityCheck = namedtuple("MultiplicityCheck", ["numeric", "predicted", "agree"])


@error_handler
def predicted_multiplicity(g, z, tol_rank=None, matrix=None):
    """
    Multiplicity predicted from the support: components minus boundary vertices.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Point on the secular manifold.
        tol_rank (float): Rank and vanishing tolerance.
        matrix (PolyMatrix): Prebuilt scattering matrix, optional.

    Returns:
        int: beta0(supp) - |boundary(supp)|.
    """
    support, _ = support_of_point(g, z, tol_rank, matrix)
    return support.beta0 - len(support.boundary)


@error_handler
def verify_multiplicity(g, z, tol_rank=None, matrix=None):
    """
    Compare the numeric kernel dimension with the predicted multiplicity.

    Returns:
        MultiplicityCheck: (numeric, predicted, agree).
    """
    matrix = matrix or scattering_matrix(g)
    numeric, _ = eigenspace(g, z, tol_rank, matrix)
    if numeric == 0:
        raise NotOnSecularManifold("eigenspace is trivial")
    predicted = predicted_multiplicity(g, z, tol_rank, matrix)
    return MultiplicityCheck(numeric, predicted, numeric == predicted)


def special_vertices(g):
    """
    Neumann branch vertices all of whose incident edges but at most one lead to leaves.

    On a single edge there is no branch vertex and the Neumann ends are used.

    Returns:
        list: Sorted vertex ids.
    """
    if g.n == 1:
        return sorted(g.neumann)
    found = []
    for v in g.neumann:
        if g.degree(v) < 2:
            continue
        inner = [j for j in g.incident_edges(v) if not g.is_leaf(g.other_end(j, v))]
        if len(inner) <= 1:
            found.append(v)
    return sorted(found)


def _value_row(g, j, v, zj):
    # coefficients of (a_j, b_j) in the boundary value at v
    return np.array([1, zj]) if g.source(j) == v else np.array([zj, 1])


def _current_row(g, j, v, zj):
    # signed outgoing derivative at v divided by ik: +(a - b z) at a source, -(a z - b) at a target
    return np.array([1, -zj]) if g.source(j) == v else np.array([-zj, 1])


@error_handler
def reconstruct_eigenvector(g, z, tol=None):
    """
    Rebuild the eigenvector at a simple, nowhere-vanishing point by propagation.

    The tree is rooted at the least-id special vertex. Working from the
    leaves up, each edge is solved with unit value at its upper vertex: a
    Neumann leaf forces zero current, a Dirichlet leaf forces zero value, and
    an inner vertex forces its own current to cancel the currents of the
    subtrees below it. Values are then pushed down from E = 1 at the root.

    Args:
        g (TreeGraph): The tree, with Dirichlet vertices only at leaves.
        z (array-like): Point on the secular manifold.
        tol (float): Vanishing tolerance.

    Returns:
        numpy.ndarray: Unit-norm coefficient vector.
    """
    tol = Config.RECONSTRUCTION_TOLERANCE if tol is None else tol
    z = as_torus_point(z, g.n)
    for v in sorted(g.dirichlet):
        if not g.is_leaf(v):
            raise StrataError(f"reconstruction needs Dirichlet vertices at leaves, vertex {v} has degree {g.degree(v)}")

    dimension, _ = eigenspace(g, z)
    if dimension == 0:
        raise NotOnSecularManifold("eigenspace is trivial")
    _, (vanishing, _) = support_of_point(g, z)
    if vanishing:
        raise VanishingVertex(min(vanishing))

    roots = special_vertices(g)
    if not roots:
        raise StrataError("tree has no Neumann special vertex")
    root = roots[0]

    tree = g.to_networkx()
    parent = nx.dfs_predecessors(tree, root)
    children = {v: [] for v in g.vertex_ids}
    for v, p in parent.items():
        children[p].append(v)

    unit = {}     # edge id -> (a, b) for unit value at the upper vertex
    current = {}  # edge id -> outgoing current at the upper vertex per unit value
    for u in nx.dfs_postorder_nodes(tree, root):
        if u == root:
            continue
        p = parent[u]
        j = tree.edges[p, u]["id"]
        zj = z[j - 1]
        if g.is_dirichlet(u):
            lower = _value_row(g, j, u, zj)
        else:
            below = sum(current[tree.edges[u, c]["id"]] for c in children[u])
            lower = _current_row(g, j, u, zj) + below * _value_row(g, j, u, zj)
        system = np.array([_value_row(g, j, p, zj), lower])
        if abs(np.linalg.det(system)) < tol:
            raise VanishingVertex(p)
        unit[j] = np.linalg.solve(system, np.array([1.0, 0.0]))
        current[j] = _current_row(g, j, p, zj) @ unit[j]

    root_currents = [current[tree.edges[root, c]["id"]] for c in children[root]]
    balance = sum(root_currents)
    if abs(balance) > Config.SPECTRUM_ACCEPT * max(1.0, sum(abs(x) for x in root_currents)):
        raise NotOnSecularManifold(f"current at the root does not balance ({abs(balance):.3e})")

    phi = np.zeros(2 * g.n, dtype=complex)
    value = {root: 1.0 + 0j}
    for p, u in nx.dfs_edges(tree, root):
        j = tree.edges[p, u]["id"]
        coefficients = value[p] * unit[j]
        phi[2 * j - 2:2 * j] = coefficients
        value[u] = _value_row(g, j, u, z[j - 1]) @ coefficients
    return phi / np.linalg.norm(phi)


def align_phase(x, reference):
    """Multiply x by the unit scalar maximizing its real overlap with reference."""
    overlap = np.vdot(x, reference)
    if abs(overlap) == 0:
        return x
    return x * (overlap / abs(overlap))


def relative_error(x, reference):
    """Relative distance after phase alignment."""
    x = x / np.linalg.norm(x)
    reference = reference / np.linalg.norm(reference)
    return float(np.linalg.norm(align_phase(x, reference) - reference))


@dataclass
class VerificationSummary:
    """Outcome of the multiplicity and reconstruction suites."""

    multiplicity_samples: int = 0
    multiplicity_agree: int = 0
    disagreements: list = field(default_factory=list)
    reconstruction_samples: int = 0
    reconstruction_skipped: int = 0
    reconstruction_max_error: float = 0.0

    @property
    def agreement_rate(self):
        return self.multiplicity_agree / self.multiplicity_samples if self.multiplicity_samples else 1.0

    def format(self):
        if self.multiplicity_samples:
            multiplicity = f"{self.multiplicity_agree}/{self.multiplicity_samples} agree"
        else:
            multiplicity = "no strata"
        if self.reconstruction_samples:
            reconstruction = f"max rel err {self.reconstruction_max_error:.1e}"
        else:
            reconstruction = "not applicable"
        return (
            f"multiplicity-formula: {multiplicity}; reconstruction: {reconstruction}"
            f" ({self.reconstruction_samples} checked, {self.reconstruction_skipped} skipped)"
        )


def _singular_margin(g, z, matrix, tol_rank):
    singular = np.linalg.svd(matrix.evaluate(z), compute_uv=False)
    relative = singular / singular[0]
    threshold = tol_rank
    # closest singular value to the rank threshold, on a log scale
    return float(relative[np.argmin(np.abs(np.log10(relative + 1e-300) - np.log10(threshold)))])


@error_handler
def run_verification(g, samples, seed, tol_rank=None, progress=False):
    """
    Multiplicity formula and reconstruction suites on one tree.

    Args:
        g (TreeGraph): The tree.
        samples (int): Samples per suite.
        seed (int): Random seed.
        tol_rank (float): Rank tolerance.
        progress (bool): Show tqdm progress bars.

    Returns:
        VerificationSummary: Counts, disagreements and errors.
    """
    tol_rank = Config.TOL_RANK if tol_rank is None else tol_rank
    rng = np.random.default_rng(seed)
    matrix = scattering_matrix(g)
    summary = VerificationSummary()

    strata = singular_components(g)
    if strata:
        for _ in tqdm(range(samples), desc="multiplicity", disable=not progress):
            s = strata[int(rng.integers(len(strata)))]
            try:
                z = sample_stratum(s, rng, avoid=strata)
            except SamplingFailed:
                logger.warning(f"Could not sample stratum {s.h.describe()}")
                continue
            check = verify_multiplicity(g, z, tol_rank, matrix)
            summary.multiplicity_samples += 1
            if check.agree:
                summary.multiplicity_agree += 1
            else:
                margin = _singular_margin(g, z, matrix, tol_rank)
                summary.disagreements.append((z, check, margin))
                logger.warning(
                    f"Multiplicity mismatch: numeric {check.numeric}, predicted {check.predicted}, "
                    f"nearest singular value ratio {margin:.2e}"
                )

    if reconstruction_applicable(g):
        p = secular_polynomial(g)
        for _ in tqdm(range(samples), desc="reconstruction", disable=not progress):
            try:
                z = sample_secular_point(g, rng, p)
                dimension, basis = eigenspace(g, z, tol_rank, matrix)
                if dimension != 1:
                    summary.reconstruction_skipped += 1
                    continue
                phi = reconstruct_eigenvector(g, z)
            except (VanishingVertex, SamplingFailed, NotOnSecularManifold):
                summary.reconstruction_skipped += 1
                continue
            summary.reconstruction_samples += 1
            summary.reconstruction_max_error = max(summary.reconstruction_max_error, relative_error(phi, basis[0]))

    logger.info(summary.format())
    return summary


def reconstruction_applicable(g):
    """True when reconstruct_eigenvector can run on g."""
    try:
        return all(g.is_leaf(v) for v in g.dirichlet) and bool(special_vertices(g))
    except TreeSpectraError:
        return False
