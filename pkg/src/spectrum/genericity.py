"""
Statistical check of simple spectra for lengths satisfying integer relations.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from scipy.optimize import linprog
from tqdm import tqdm

from spectrum.scanner import compute_spectrum, default_step
from utils.config import Config
from utils.error_handler import error_handler, InfeasibleRelations, StepTooCoarse


@dataclass
class GenericityResult:
    samples: int = 0
    fully_simple: int = 0
    worst_gap_to_double: float = math.inf
    lengths: list = field(default_factory=list)

    @property
    def fraction_fully_simple(self):
        return self.fully_simple / self.samples if self.samples else 0.0

    def format(self):
        gap = f"{self.worst_gap_to_double:.6e}" if math.isfinite(self.worst_gap_to_double) else "inf"
        return (
            f"fully_simple={self.fully_simple}/{self.samples} "
            f"fraction={self.fraction_fully_simple:.3f} worst_gap_to_double={gap}"
        )


def positive_cone_feasible(rel):
    """
    True when some length vector with all entries positive satisfies the relations.

    Solves max t subject to A l = 0, t <= l_j <= 1.
    """
    n = rel.n
    if not rel.rows:
        return True
    # variables (l_1..l_n, t); minimize -t
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_eq = np.hstack([rel.matrix(), np.zeros((len(rel.rows), 1))])
    a_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
    result = linprog(
        c, A_ub=a_ub, b_ub=np.zeros(n), A_eq=a_eq, b_eq=np.zeros(len(rel.rows)),
        bounds=[(0, 1)] * n + [(None, 1)], method="highs",
    )
    return bool(result.success and -result.fun > 1e-9)


def sample_lengths(rel, rng, attempts=None):
    """
    Random length vector in the positive part of the relation kernel.

    Coefficients on an orthonormal kernel basis are drawn from a box; the
    vector is scaled to maximum length 1 and rejected when its shortest
    edge is below the configured ratio.

    Args:
        rel (RelationLattice): The relations.
        rng (numpy.random.Generator): Random source.
        attempts (int): Rejection budget.

    Returns:
        numpy.ndarray: The lengths.
    """
    attempts = attempts or Config.LENGTH_ATTEMPTS
    basis = rel.length_basis()
    for _ in range(attempts):
        coefficients = rng.uniform(-Config.LENGTH_BOX, Config.LENGTH_BOX, basis.shape[1])
        lengths = basis @ coefficients
        if np.all(lengths < 0):
            lengths = -lengths
        if np.any(lengths <= 0):
            continue
        lengths = lengths / lengths.max()
        if lengths.min() >= Config.MIN_LENGTH_RATIO:
            return lengths
    raise InfeasibleRelations(f"no positive length vector found in {attempts} attempts")


def spectrum_with_retries(g, lengths, k_max, **options):
    """compute_spectrum, halving the grid step whenever it proves too coarse."""
    step = default_step(lengths)
    for _ in range(Config.STEP_HALVINGS + 1):
        try:
            return compute_spectrum(g, lengths, k_max, step=step, **options)
        except StepTooCoarse:
            step /= 2
            logger.warning(f"Halving the scan step to {step:.3e}")
    return compute_spectrum(g, lengths, k_max, step=step, **options)


@error_handler
def genericity_trial(g, rel, samples, k_max, seed, progress=False, **options):
    """
    Fraction of sampled length vectors in the relation family with simple spectrum.

    Args:
        g (TreeGraph): The tree.
        rel (RelationLattice): Relations on the same n.
        samples (int): Number of length vectors.
        k_max (float): Scan window.
        seed (int): Random seed.
        progress (bool): Show a tqdm progress bar.

    Returns:
        GenericityResult: Counts and the smallest gap seen.
    """
    if rel.n != g.n:
        raise ValueError(f"relations have {rel.n} columns, graph has {g.n} edges")
    if not positive_cone_feasible(rel):
        raise InfeasibleRelations("the relations admit no positive lengths")
    rng = np.random.default_rng(seed)
    result = GenericityResult()
    for _ in tqdm(range(samples), desc="genericity", disable=not progress):
        lengths = sample_lengths(rel, rng)
        report = spectrum_with_retries(g, lengths, k_max, **options)
        result.samples += 1
        result.lengths.append(lengths)
        if report.is_simple():
            result.fully_simple += 1
            result.worst_gap_to_double = min(result.worst_gap_to_double, report.mingap_estimate)
        else:
            logger.debug(f"Multiple eigenvalue for lengths {np.round(lengths, 6)}")
    logger.info(result.format())
    return result
