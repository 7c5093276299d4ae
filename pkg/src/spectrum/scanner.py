"""
Numeric spectrum of a metric tree along the path k -> exp(i k l).
"""

import math
from dataclasses import dataclass, field

import numpy as np
from loguru import logger
from scipy.optimize import bisect, minimize_scalar

from secular_engine.eigenspace import phase_point
from secular_engine.scattering import scattering_matrix, secular_polynomial
from utils.config import Config
from utils.error_handler import (
    error_handler,
    EmptyWindow,
    NonPositiveLength,
    ParseError,
    StepTooCoarse,
)
from utils.helpers import format_float


@dataclass(frozen=True)
class SpectrumEntry:
    k: float
    multiplicity: int
    residual: float
    poly_residual: float = 0.0


@dataclass
class SpectrumReport:
    """Refined eigenvalues in (k_min, k_max] with multiplicities."""

    eigenvalues: list = field(default_factory=list)
    window: tuple = (0.0, 0.0)
    step: float = 0.0

    @property
    def ks(self):
        return [e.k for e in self.eigenvalues]

    @property
    def gaps(self):
        ks = self.ks
        return [b - a for a, b in zip(ks, ks[1:])]

    @property
    def mingap_estimate(self):
        gaps = self.gaps
        return min(gaps) if gaps else math.inf

    def count(self, k_max=None):
        """Eigenvalues up to k_max counted with multiplicity."""
        k_max = self.window[1] if k_max is None else k_max
        return sum(e.multiplicity for e in self.eigenvalues if e.k <= k_max)

    def is_simple(self):
        return all(e.multiplicity == 1 for e in self.eigenvalues)


def check_lengths(lengths, n=None):
    lengths = [float(x) for x in lengths]
    if n is not None and len(lengths) != n:
        raise ValueError(f"expected {n} lengths, got {len(lengths)}")
    for index, value in enumerate(lengths, start=1):
        if not value > 0:
            raise NonPositiveLength(index, value)
    return np.array(lengths)


def default_step(lengths):
    """pi / (8 L): eight grid points per mean eigenvalue gap."""
    return math.pi / (Config.GRID_POINTS_PER_GAP * float(np.sum(lengths)))


class SpectrumScanner:
    """
    Scanner for the smallest relative singular value of S(exp(i k l)).
    """

    def __init__(self, g, lengths, tol_root=None, tol_rank=None):
        """
        Initialize the scanner.

        Args:
            g (TreeGraph): The tree.
            lengths (list): Positive edge lengths.
            tol_root (float): Root accuracy in k.
            tol_rank (float): Relative rank tolerance.
        """
        self.g = g
        self.lengths = check_lengths(lengths, g.n)
        self.tol_root = Config.TOL_ROOT if tol_root is None else tol_root
        self.tol_rank = Config.TOL_RANK if tol_rank is None else tol_rank
        self.matrix = scattering_matrix(g)
        self.polynomial = secular_polynomial(g)
        logger.debug("SpectrumScanner initialized")

    def singular_values(self, ks):
        """Singular values, descending, at each k in a 1-d array."""
        points = np.exp(1j * np.outer(np.atleast_1d(ks), self.lengths))
        return np.linalg.svd(self.matrix.evaluate(points), compute_uv=False)

    def detector(self, k):
        s = self.singular_values(k)[0]
        return float(s[-1] / s[0])

    def _phase_aligned_determinant(self, reference):
        phase = np.exp(-1j * np.angle(self._centered_polynomial(reference)))

        def h(k):
            return float(np.real(phase * self._centered_polynomial(k)))
        return h

    def _centered_polynomial(self, k):
        # P(exp(ikl)) exp(-ikL) is real up to a constant phase
        return self.polynomial.evaluate(phase_point(k, self.lengths)) * np.exp(-1j * k * self.lengths.sum())

    def refine(self, a, b, c):
        """
        Refine a bracketed minimum of the detector.

        Golden-section search first; bisection on the phase-aligned
        determinant when the bracket is not strict; bounded Brent otherwise.

        Args:
            a (float): Left grid point.
            b (float): Grid point with the smallest detector value.
            c (float): Right grid point.

        Returns:
            float: The refined k.
        """
        try:
            result = minimize_scalar(
                self.detector, bracket=(a, b, c), method="golden",
                tol=self.tol_root / (4 * max(b, 1.0)),
            )
            if a <= result.x <= c:
                return float(result.x)
        except ValueError:
            pass
        logger.debug(f"Golden-section refinement stalled on [{a:.6f}, {c:.6f}]")
        h = self._phase_aligned_determinant(b)
        if h(a) * h(c) < 0:
            return float(bisect(h, a, c, xtol=self.tol_root / 4))
        result = minimize_scalar(self.detector, bounds=(a, c), method="bounded", options={"xatol": self.tol_root / 4})
        return float(result.x)

    def multiplicity(self, k):
        s = self.singular_values(k)[0]
        residual = s[-1] / s[0]
        threshold = max(self.tol_rank, Config.MULTIPLICITY_FACTOR * residual)
        return int(np.sum(s < threshold * s[0])), float(residual)

    def centered_values(self, ks):
        """P(exp(i k l)) exp(-i k L) on a 1-d array of k, rotated onto the real axis."""
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        values = self.polynomial.evaluate(np.exp(1j * np.outer(ks, self.lengths)))
        values = values * np.exp(-1j * ks * self.lengths.sum())
        phase = np.exp(-1j * np.angle(values[np.argmax(np.abs(values))]))
        return np.real(phase * values)

    def _roots_on_grid(self, grid):
        values = self.singular_values(grid)
        detector = values[:, -1] / values[:, 0]
        candidates = [
            i for i in range(1, len(grid) - 1)
            if detector[i] <= detector[i - 1] and detector[i] <= detector[i + 1]
        ]
        logger.debug(f"Scanned {len(grid)} grid points, {len(candidates)} candidate minima")
        roots = []
        for i in candidates:
            k = self.refine(grid[i - 1], grid[i], grid[i + 1])
            multiplicity, residual = self.multiplicity(k)
            if residual > Config.SPECTRUM_ACCEPT or multiplicity == 0:
                continue
            roots.append(SpectrumEntry(k, multiplicity, residual))
        return sorted(roots, key=lambda e: e.k)

    def _distinct(self, roots):
        kept = []
        for entry in sorted(roots, key=lambda e: e.k):
            if kept and entry.k - kept[-1].k < Config.MERGE_FACTOR * self.tol_root:
                if entry.multiplicity > kept[-1].multiplicity:
                    kept[-1] = entry
                continue
            kept.append(entry)
        return kept

    def resolve_cells(self, grid, roots, depth=0):
        """
        Check refined roots against sign changes of the centered determinant.

        Between two grid points where the determinant is clearly nonzero, the
        roots found must have a total multiplicity with the parity of the sign
        change. A cell failing the check is rescanned on a finer grid; past
        the configured depth StepTooCoarse is raised.

        Args:
            grid (numpy.ndarray): Increasing grid points.
            roots (list): Refined SpectrumEntry values.
            depth (int): Current rescan depth.

        Returns:
            list: Distinct roots sorted by k.
        """
        roots = self._distinct(roots)
        h = self.centered_values(grid)
        reliable = np.flatnonzero(np.abs(h) > Config.SIGN_FLOOR * np.max(np.abs(h)))
        for left, right in zip(reliable, reliable[1:]):
            a, b = grid[left], grid[right]
            inside = [e for e in roots if a < e.k <= b]
            found = sum(e.multiplicity for e in inside)
            if found % 2 == int(h[left] * h[right] < 0):
                continue
            if depth >= Config.RESCAN_DEPTH:
                raise StepTooCoarse(a, b, grid[1] - grid[0])
            logger.debug(f"Root parity fails on [{a:.9f}, {b:.9f}] with {found} found, rescanning")
            fine = np.linspace(a, b, Config.RESCAN_POINTS)
            pad = fine[1] - fine[0]
            rescanned = self._roots_on_grid(np.concatenate(([a - pad], fine, [b + pad])))
            candidates = inside + [e for e in rescanned if a < e.k <= b]
            refound = self.resolve_cells(fine, candidates, depth + 1)
            roots = sorted([e for e in roots if not a < e.k <= b] + refound, key=lambda e: e.k)
        return roots

    def scan(self, k_max, step=None, k_min=0.0):
        """
        Scan (k_min, k_max] and refine every candidate minimum.

        Args:
            k_max (float): Upper end of the window.
            step (float): Grid step, defaults to pi / (8 L).
            k_min (float): Lower end of the window, excluded.

        Returns:
            SpectrumReport: The refined spectrum.
        """
        if not k_max > 0:
            raise ValueError(f"k_max must be positive, got {k_max}")
        step = default_step(self.lengths) if step is None else step
        grid = np.arange(k_min + step, k_max + 2 * step, step)
        refined = self.resolve_cells(grid, self._roots_on_grid(grid))

        grid_norm = float(np.max(np.abs(self.polynomial.evaluate(np.exp(1j * np.outer(grid, self.lengths))))))
        roots = []
        for entry in refined:
            if not k_min < entry.k <= k_max:
                continue
            poly_residual = abs(self.polynomial.evaluate(phase_point(entry.k, self.lengths))) / grid_norm
            if poly_residual > Config.POLY_RESIDUAL:
                logger.warning(f"Polynomial residual {poly_residual:.2e} at k={entry.k:.9f} exceeds {Config.POLY_RESIDUAL}")
            roots.append(SpectrumEntry(entry.k, entry.multiplicity, entry.residual, float(poly_residual)))

        roots = self._merge(roots)
        return SpectrumReport(eigenvalues=roots, window=(k_min, k_max), step=step)

    def _merge(self, roots):
        merged = []
        for entry in roots:
            if merged and entry.k - merged[-1].k < Config.MERGE_FACTOR * self.tol_root:
                previous = merged.pop()
                middle = 0.5 * (previous.k + entry.k)
                multiplicity, residual = self.multiplicity(middle)
                logger.warning(f"Merged roots {previous.k:.9f} and {entry.k:.9f} (multiplicity {multiplicity})")
                merged.append(SpectrumEntry(middle, max(multiplicity, 1), residual, previous.poly_residual))
                continue
            merged.append(entry)
        return merged


@error_handler
def compute_spectrum(g, lengths, k_max, step=None, tol_root=None, tol_rank=None, k_min=0.0):
    """
    Eigenvalues of (G, l) in (k_min, k_max] with multiplicities.

    Args:
        g (TreeGraph): The tree.
        lengths (list): Positive edge lengths.
        k_max (float): Upper end of the window.
        step (float): Grid step.
        tol_root (float): Root accuracy.
        tol_rank (float): Rank tolerance.
        k_min (float): Lower end of the window, excluded.

    Returns:
        SpectrumReport: The refined spectrum.
    """
    scanner = SpectrumScanner(g, lengths, tol_root, tol_rank)
    report = scanner.scan(k_max, step, k_min)
    logger.info(f"Found {len(report.eigenvalues)} eigenvalues up to k={k_max}")
    return report


@error_handler
def mingap_estimate(g, lengths, window, report=None, **options):
    """
    Smallest gap between consecutive distinct eigenvalues in a window.

    This is an upper bound for the mingap: a finite window can only
    over-estimate a limit inferior.

    Args:
        g (TreeGraph): The tree.
        lengths (list): Positive edge lengths.
        window (tuple): (K0, K1).
        report (SpectrumReport): Precomputed spectrum covering the window.

    Returns:
        float: The estimate.
    """
    k0, k1 = window
    if report is None or report.window[1] < k1:
        report = compute_spectrum(g, lengths, k1, **options)
    ks = [k for k in report.ks if k0 <= k <= k1]
    if len(ks) < 2:
        raise EmptyWindow(window)
    return min(b - a for a, b in zip(ks, ks[1:]))


def weyl_count(lengths, k):
    """Leading term k L / pi of the eigenvalue count."""
    return k * float(np.sum(lengths)) / math.pi


def format_spectrum(report, machine=False):
    """
    Spectrum text.

    Human lines read `k=<value> mult=<m> residual=<r>`; the machine variant
    is tab separated with columns k, multiplicity, residual. Both end with
    the mingap estimate.
    """
    lines = []
    for e in report.eigenvalues:
        if machine:
            lines.append(f"{format_float(e.k)}\t{e.multiplicity}\t{e.residual:.3e}")
        else:
            lines.append(f"k={format_float(e.k)} mult={e.multiplicity} residual={e.residual:.3e}")
    gap = report.mingap_estimate
    gap_text = format_float(gap) if math.isfinite(gap) else "inf"
    lines.append(f"mingap_estimate\t{gap_text}" if machine else f"mingap_estimate={gap_text}")
    return "\n".join(lines) + "\n"


def parse_spectrum(text):
    """
    Parse either spectrum text variant.

    Returns:
        tuple: (list of (k, multiplicity, residual), mingap estimate).
    """
    entries = []
    gap = None
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            if line.startswith("mingap_estimate"):
                gap = float(line.replace("=", "\t").split("\t")[1])
            elif line.startswith("k="):
                fields = dict(part.split("=", 1) for part in line.split())
                entries.append((float(fields["k"]), int(fields["mult"]), float(fields["residual"])))
            else:
                k, mult, res = line.split("\t")
                entries.append((float(k), int(mult), float(res)))
        except (KeyError, ValueError) as e:
            raise ParseError(f"malformed spectrum line '{line}'", number) from e
    if gap is None:
        raise ParseError("missing mingap_estimate line")
    return entries, gap
