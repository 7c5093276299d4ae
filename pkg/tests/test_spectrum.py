"""
Tests for the spectrum module.
"""

import math
import os
import unittest

import numpy as np
from loguru import logger

# Add src to path
import sys
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from cohomology import RelationLattice, make_lattice
from graph_model import path_graph, star_graph
from spectrum import (
    SpectrumEntry,
    SpectrumScanner,
    check_lengths,
    compute_spectrum,
    default_step,
    format_spectrum,
    genericity_trial,
    mingap_estimate,
    parse_spectrum,
    positive_cone_feasible,
    sample_lengths,
    spectrum_with_retries,
    weyl_count,
)
from strata import predicted_multiplicity, singular_components, strata_containing
from utils.config import Config
from utils.error_handler import (
    EmptyWindow,
    InfeasibleRelations,
    NonPositiveLength,
    ParseError,
    StepTooCoarse,
)


class TestSpectrumScanner(unittest.TestCase):
    """Tests for the SpectrumScanner class and compute_spectrum."""

    def setUp(self):
        """Set up test environment."""
        logger.remove()
        logger.add(sys.stderr, level="ERROR")
        self.interval = path_graph(1)

    def test_check_lengths(self):
        np.testing.assert_array_equal(check_lengths([1, 2]), [1.0, 2.0])
        with self.assertRaises(NonPositiveLength) as ctx:
            check_lengths([1, 0])
        self.assertEqual(ctx.exception.index, 2)
        with self.assertRaises(ValueError):
            check_lengths([1, 2], n=3)

    def test_default_step(self):
        self.assertAlmostEqual(default_step([1, 1, 1]), math.pi / 24)

    def test_interval_neumann(self):
        report = compute_spectrum(self.interval, [1.0], 10)
        np.testing.assert_allclose(report.ks, [math.pi, 2 * math.pi, 3 * math.pi], atol=1e-6)
        self.assertTrue(report.is_simple())

    def test_interval_mixed(self):
        """Test the Neumann-Dirichlet interval: k = pi/2 + m pi."""
        report = compute_spectrum(path_graph(1, ["right"]), [1.0], 10)
        np.testing.assert_allclose(report.ks, [math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2], atol=1e-6)

    def test_interval_scaled(self):
        report = compute_spectrum(self.interval, [2.0], 5)
        np.testing.assert_allclose(report.ks, [math.pi / 2, math.pi, 3 * math.pi / 2], atol=1e-6)

    def test_star_multiplicities(self):
        report = compute_spectrum(star_graph(3), [1, 1, 1], 7)
        np.testing.assert_allclose(
            report.ks, [math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi], atol=1e-6
        )
        self.assertEqual([e.multiplicity for e in report.eigenvalues], [2, 1, 2, 1])
        self.assertEqual(report.count(), 6)
        self.assertFalse(report.is_simple())

    def test_residuals(self):
        report = spectrum_with_retries(star_graph(3), [1.0, 1.3, 0.7], 10)
        for entry in report.eigenvalues:
            self.assertLess(entry.residual, 1e-6)
            self.assertLess(entry.poly_residual, 1e-6)

    def test_window(self):
        report = compute_spectrum(self.interval, [1.0], 10, k_min=4.0)
        np.testing.assert_allclose(report.ks, [2 * math.pi, 3 * math.pi], atol=1e-6)

    def test_nonpositive_length(self):
        with self.assertRaises(NonPositiveLength):
            compute_spectrum(path_graph(2), [1.0, -1.0], 5)

    def test_merge_close_roots(self):
        scanner = SpectrumScanner(self.interval, [1.0])
        roots = [SpectrumEntry(math.pi, 1, 0.0), SpectrumEntry(math.pi + 1e-9, 1, 0.0)]
        merged = scanner._merge(roots)
        self.assertEqual(len(merged), 1)
        self.assertEqual(merged[0].multiplicity, 1)

    def test_step_too_coarse(self):
        """Test that an unresolved sign change fails once the rescan depth is spent."""
        scanner = SpectrumScanner(self.interval, [1.0])
        with self.assertRaises(StepTooCoarse):
            scanner.resolve_cells(np.array([3.0, 3.3]), [], depth=Config.RESCAN_DEPTH)

    def test_rescan_recovers_missed_root(self):
        scanner = SpectrumScanner(self.interval, [1.0])
        roots = scanner.resolve_cells(np.array([3.0, 3.3]), [])
        self.assertEqual(len(roots), 1)
        self.assertAlmostEqual(roots[0].k, math.pi, places=7)

    def test_close_roots_in_one_cell(self):
        """Test a near-equilateral star whose eigenvalue pairs share grid cells."""
        report = compute_spectrum(star_graph(3), [1, 1, 1.01], 5)
        self.assertEqual(len(report.eigenvalues), 5)
        self.assertEqual(report.count(), 5)
        for k in (math.pi / 2, 3 * math.pi / 2):
            self.assertLess(min(abs(x - k) for x in report.ks), 1e-6)

    def test_multiplicity_matches_strata(self):
        g = star_graph(3)
        strata = singular_components(g)
        report = compute_spectrum(g, [1, 1, 1], 10)
        on_strata = 0
        for entry in report.eigenvalues:
            z = np.exp(1j * entry.k * np.ones(3))
            if strata_containing(g, z, strata):
                on_strata += 1
                tol_rank = max(Config.TOL_RANK, Config.MULTIPLICITY_FACTOR * entry.residual)
                self.assertEqual(entry.multiplicity, predicted_multiplicity(g, z, tol_rank))
        self.assertEqual(on_strata, 3)


class TestMingap(unittest.TestCase):
    """Tests for mingap estimates and the Weyl count."""

    def setUp(self):
        """Set up test environment."""
        logger.remove()
        logger.add(sys.stderr, level="ERROR")

    def test_interval(self):
        self.assertAlmostEqual(mingap_estimate(path_graph(1), [1.0], (0, 20)), math.pi, places=6)

    def test_equilateral_star(self):
        self.assertAlmostEqual(mingap_estimate(star_graph(3), [1, 1, 1], (0, 20)), math.pi / 2, places=6)

    def test_empty_window(self):
        with self.assertRaises(EmptyWindow):
            mingap_estimate(path_graph(1), [1.0], (0, 4))

    def test_larger_window_never_increases(self):
        g = star_graph(3)
        lengths = [1, 1, math.sqrt(2)]
        report = spectrum_with_retries(g, lengths, 100)
        small = mingap_estimate(g, lengths, (0, 50), report=report)
        large = mingap_estimate(g, lengths, (0, 100), report=report)
        self.assertLessEqual(large, small)
        self.assertGreater(large, 0)

    def test_weyl_count(self):
        report = compute_spectrum(path_graph(1), [1.0], 100)
        self.assertLessEqual(abs(report.count() - weyl_count([1.0], 100)), 3)


class TestSpectrumText(unittest.TestCase):
    """Tests for spectrum text output."""

    def setUp(self):
        """Set up test environment."""
        logger.remove()
        logger.add(sys.stderr, level="ERROR")
        self.report = compute_spectrum(star_graph(3), [1, 1, 1], 4)

    def test_human(self):
        text = format_spectrum(self.report)
        lines = text.splitlines()
        self.assertTrue(lines[0].startswith("k=1.5707963"))
        self.assertIn(" mult=2 residual=", lines[0])
        self.assertTrue(lines[-1].startswith("mingap_estimate=1.570796"))

    def test_machine(self):
        text = format_spectrum(self.report, machine=True)
        self.assertEqual(text.splitlines()[1].split("\t")[1], "1")
        self.assertTrue(text.splitlines()[-1].startswith("mingap_estimate\t"))

    def test_parse(self):
        for machine in (False, True):
            entries, gap = parse_spectrum(format_spectrum(self.report, machine=machine))
            self.assertEqual([m for _, m, _ in entries], [2, 1])
            self.assertAlmostEqual(gap, math.pi / 2, places=6)

    def test_parse_errors(self):
        with self.assertRaises(ParseError):
            parse_spectrum("k=1.0 mult=1 residual=0.0\n")
        with self.assertRaises(ParseError) as ctx:
            parse_spectrum("k=1.0 mult=x residual=0.0\nmingap_estimate=inf\n")
        self.assertEqual(ctx.exception.line, 1)


class TestGenericity(unittest.TestCase):
    """Tests for relation families and genericity trials."""

    def setUp(self):
        """Set up test environment."""
        logger.remove()
        logger.add(sys.stderr, level="ERROR")

    def test_positive_cone(self):
        self.assertTrue(positive_cone_feasible(RelationLattice(3, ())))
        self.assertTrue(positive_cone_feasible(make_lattice([(1, 1, -2)], 3)))
        self.assertFalse(positive_cone_feasible(make_lattice([(1, 1, 1)], 3)))

    def test_sample_lengths(self):
        rel = make_lattice([(1, 1, -2)], 3)
        rng = np.random.default_rng(4)
        for _ in range(10):
            lengths = sample_lengths(rel, rng)
            self.assertTrue(rel.satisfied_by(lengths))
            self.assertAlmostEqual(lengths.max(), 1.0)
            self.assertGreaterEqual(lengths.min(), 0.05)

    def test_interval_always_simple(self):
        result = genericity_trial(path_graph(1), RelationLattice(1, ()), samples=3, k_max=20, seed=0)
        self.assertEqual(result.samples, 3)
        self.assertEqual(result.fraction_fully_simple, 1.0)
        self.assertTrue(result.format().startswith("fully_simple=3/3 "))

    def test_equilateral_family(self):
        rel = make_lattice([(1, -1, 0), (0, 1, -1)], 3)
        result = genericity_trial(star_graph(3), rel, samples=2, k_max=5, seed=0)
        self.assertEqual(result.fully_simple, 0)

    def test_infeasible(self):
        with self.assertRaises(InfeasibleRelations):
            genericity_trial(star_graph(3), make_lattice([(1, 1, 1)], 3), samples=1, k_max=5, seed=0)


if __name__ == "__main__":
    unittest.main()
