"""
Tests for the sparse polynomial module.
"""

import os
import unittest

import numpy as np

# Add src to path
import sys
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from secular_engine.multipoly import MultiPoly, format_polynomial, parse_polynomial
from utils.error_handler import ParseError


def z(n, j):
    return MultiPoly.variable(n, j)


class TestMultiPoly(unittest.TestCase):
    """Tests for the MultiPoly class."""

    def test_zero_terms_dropped(self):
        p = MultiPoly(2, {(1, 0): 3, (0, 1): 0})
        self.assertEqual(p.terms, {(1, 0): 3})

    def test_arithmetic(self):
        """Test (z1 + 1)(z1 - 1) = z1^2 - 1."""
        p = (z(1, 1) + 1) * (z(1, 1) - 1)
        self.assertEqual(p, MultiPoly(1, {(2,): 1, (0,): -1}))
        self.assertTrue((p - p).is_zero())
        self.assertEqual(2 * p, p + p)

    def test_mismatched_variable_count(self):
        with self.assertRaises(ValueError):
            z(1, 1) + z(2, 1)

    def test_degree_and_variables(self):
        p = z(3, 1) * z(3, 1) * z(3, 3) + 5
        self.assertEqual(p.degree_in(1), 2)
        self.assertEqual(p.degree_in(2), 0)
        self.assertEqual(p.variables(), [1, 3])
        self.assertEqual(MultiPoly(2).degree_in(1), -1)

    def test_canonical_strips_monomial_and_content(self):
        """Test that -2 z1 (z1^2 - 1) becomes z1^2 - 1."""
        p = MultiPoly(1, {(3,): -2, (1,): 2})
        self.assertEqual(p.canonical(), MultiPoly(1, {(2,): 1, (0,): -1}))

    def test_canonical_sign(self):
        p = MultiPoly(2, {(0, 2): 3, (1, 0): -6})
        self.assertEqual(p.canonical().terms, {(1, 0): 2, (0, 2): -1})

    def test_canonical_idempotent(self):
        p = (z(2, 1) * z(2, 2) * 4 - 2) * z(2, 2)
        self.assertEqual(p.canonical().canonical(), p.canonical())

    def test_derivative(self):
        p = z(2, 1) * z(2, 1) * z(2, 2) * 3 + z(2, 2)
        self.assertEqual(p.derivative(1), z(2, 1) * z(2, 2) * 6)
        self.assertEqual(p.derivative(2), z(2, 1) * z(2, 1) * 3 + 1)

    def test_lift(self):
        p = z(1, 1) * z(1, 1) + 1
        lifted = p.lift(3, {1: 2})
        self.assertEqual(lifted, z(3, 2) * z(3, 2) + 1)
        self.assertEqual(p.lift(2), z(2, 1) * z(2, 1) + 1)

    def test_evaluate(self):
        p = z(2, 1) * z(2, 2) - 1
        self.assertAlmostEqual(p.evaluate([1j, -1j]), 0)
        batch = p.evaluate(np.array([[1, 1], [2, 3]]))
        np.testing.assert_allclose(batch, [0, 5])

    def test_evaluate_zero_polynomial(self):
        self.assertEqual(MultiPoly(2).evaluate([1, 1]), 0)


class TestPolynomialText(unittest.TestCase):
    """Tests for polynomial serialization."""

    def test_format_interval(self):
        p = MultiPoly(1, {(2,): 1, (0,): -1})
        self.assertEqual(format_polynomial(p), "1 z1^2 - 1")

    def test_format_path(self):
        p = MultiPoly(2, {(2, 2): 1, (0, 0): -1})
        self.assertEqual(format_polynomial(p), "1 z1^2 z2^2 - 1")

    def test_format_order(self):
        """Test descending lexicographic order of exponents."""
        p = MultiPoly(2, {(0, 2): -1, (2, 0): 3, (1, 1): 2})
        self.assertEqual(format_polynomial(p), "3 z1^2 + 2 z1^1 z2^1 - 1 z2^2")

    def test_format_zero(self):
        self.assertEqual(format_polynomial(MultiPoly(3)), "0")

    def test_parse_inverts_format(self):
        p = MultiPoly(3, {(2, 2, 2): 3, (2, 0, 0): -1, (0, 0, 0): -3})
        self.assertEqual(parse_polynomial(format_polynomial(p), 3), p)
        self.assertTrue(parse_polynomial("0", 2).is_zero())

    def test_parse_errors(self):
        with self.assertRaises(ParseError):
            parse_polynomial("1 z4^2", 3)
        with self.assertRaises(ParseError):
            parse_polynomial("1 z1^2 -", 1)
        with self.assertRaises(ParseError):
            parse_polynomial("z1^2", 1)


if __name__ == "__main__":
    unittest.main()
