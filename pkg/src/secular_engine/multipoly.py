"""
Sparse multivariate polynomials with exact integer coefficients.
"""

import re
from functools import reduce
from math import gcd

import numpy as np

from utils.error_handler import ParseError

_VARIABLE = re.compile(r"^z(\d+)\^(\d+)$")
_INTEGER = re.compile(r"^[+-]?\d+$")


class MultiPoly:
    """
    Polynomial in z_1..z_n stored as {exponent tuple: nonzero int}.

    Instances are treated as immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        cleaned = {}
        for exponent, coeff in (terms or {}).items():
            coeff = int(coeff)
            if coeff:
                exponent = tuple(int(e) for e in exponent)
                if len(exponent) != n:
                    raise ValueError(f"exponent {exponent} does not have length {n}")
                cleaned[exponent] = coeff
        self.terms = cleaned

    @classmethod
    def constant(cls, n, value):
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n, j, coeff=1):
        """The monomial coeff * z_j (1-based j)."""
        exponent = [0] * n
        exponent[j - 1] = 1
        return cls(n, {tuple(exponent): coeff})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({format_polynomial(self)!r}, n={self.n})"

    def _check(self, other):
        if isinstance(other, int):
            return MultiPoly.constant(self.n, other)
        if other.n != self.n:
            raise ValueError(f"variable counts differ: {self.n} and {other.n}")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for exponent, coeff in other.terms.items():
            terms[exponent] = terms.get(exponent, 0) + coeff
        return MultiPoly(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiPoly(self.n, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                terms[exponent] = terms.get(exponent, 0) + c1 * c2
        return MultiPoly(self.n, terms)

    __rmul__ = __mul__

    def degree_in(self, j):
        """Degree in z_j (1-based); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[j - 1] for e in self.terms)

    def variables(self):
        """1-based indices of the variables that occur."""
        return sorted({i + 1 for e in self.terms for i, x in enumerate(e) if x})

    def content(self):
        if not self.terms:
            return 0
        return reduce(gcd, (abs(c) for c in self.terms.values()))

    def l1_norm(self):
        return sum(abs(c) for c in self.terms.values())

    def leading_exponent(self):
        """Lexicographically greatest exponent."""
        return max(self.terms) if self.terms else None

    def canonical(self):
        """
        Canonical representative up to units.

        Removes the common monomial factor and the integer content, then makes
        the coefficient of the lexicographically greatest monomial positive.

        Returns:
            MultiPoly: The canonical form.
        """
        if not self.terms:
            return self
        shift = tuple(min(e[i] for e in self.terms) for i in range(self.n))
        content = self.content()
        terms = {
            tuple(a - b for a, b in zip(e, shift)): c // content
            for e, c in self.terms.items()
        }
        if terms[max(terms)] < 0:
            terms = {e: -c for e, c in terms.items()}
        return MultiPoly(self.n, terms)

    def derivative(self, j):
        """Partial derivative with respect to z_j (1-based)."""
        terms = {}
        for e, c in self.terms.items():
            if e[j - 1]:
                lowered = list(e)
                lowered[j - 1] -= 1
                terms[tuple(lowered)] = c * e[j - 1]
        return MultiPoly(self.n, terms)

    def lift(self, n, mapping=None):
        """
        Embed into an n-variable ring.

        Args:
            n (int): Target variable count.
            mapping (dict): Source variable index to target index, 1-based.
                Defaults to the identity.

        Returns:
            MultiPoly: The lifted polynomial.
        """
        mapping = mapping or {i: i for i in range(1, self.n + 1)}
        terms = {}
        for e, c in self.terms.items():
            lifted = [0] * n
            for i, x in enumerate(e, start=1):
                if x:
                    lifted[mapping[i] - 1] = x
            terms[tuple(lifted)] = c
        return MultiPoly(n, terms)

    def as_arrays(self):
        """Exponent matrix and coefficient vector for vectorized evaluation."""
        if not self.terms:
            return np.zeros((0, self.n), dtype=int), np.zeros(0)
        exponents = sorted(self.terms)
        return np.array(exponents, dtype=int), np.array([self.terms[e] for e in exponents], dtype=float)

    def evaluate(self, z):
        """
        Evaluate at a complex point, or at a batch of points of shape (..., n).

        Args:
            z (array-like): Complex coordinates.

        Returns:
            complex or numpy.ndarray: The value(s).
        """
        z = np.asarray(z, dtype=complex)
        exponents, coeffs = self.as_arrays()
        if not len(coeffs):
            return np.zeros(z.shape[:-1], dtype=complex) if z.ndim > 1 else 0j
        monomials = np.prod(z[..., None, :] ** exponents, axis=-1)
        return monomials @ coeffs


def format_polynomial(p):
    """
    Serialize terms in descending lexicographic exponent order.

    Each term is `<coeff> z1^<e1> ...` with zero exponents omitted; terms are
    joined with ` + ` or ` - `.

    Args:
        p (MultiPoly): The polynomial.

    Returns:
        str: Polynomial text, `0` for the zero polynomial.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for index, exponent in enumerate(sorted(p.terms, reverse=True)):
        coeff = p.terms[exponent]
        factors = "".join(f" z{i}^{e}" for i, e in enumerate(exponent, start=1) if e)
        if index == 0:
            pieces.append(f"{coeff}{factors}")
        else:
            pieces.append(f" {'-' if coeff < 0 else '+'} {abs(coeff)}{factors}")
    return "".join(pieces)


def parse_polynomial(text, n):
    """
    Parse the text produced by format_polynomial.

    Args:
        text (str): Polynomial text.
        n (int): Variable count.

    Returns:
        MultiPoly: The parsed polynomial.
    """
    tokens = text.split()
    if tokens == ["0"]:
        return MultiPoly(n)

    terms = {}
    sign = 1
    coeff = None
    exponent = None

    def flush():
        if coeff is not None:
            key = tuple(exponent)
            terms[key] = terms.get(key, 0) + coeff

    for token in tokens:
        if token in ("+", "-"):
            if coeff is None and terms:
                raise ParseError(f"unexpected '{token}' in polynomial '{text}'")
            flush()
            coeff = None
            sign = -1 if token == "-" else 1
        elif _INTEGER.match(token):
            if coeff is not None:
                raise ParseError(f"missing operator before '{token}'")
            coeff = sign * int(token)
            exponent = [0] * n
        else:
            match = _VARIABLE.match(token)
            if not match or coeff is None:
                raise ParseError(f"unexpected token '{token}' in polynomial")
            i, e = int(match.group(1)), int(match.group(2))
            if not 1 <= i <= n:
                raise ParseError(f"variable z{i} outside z1..z{n}")
            exponent[i - 1] += e
    if coeff is None:
        raise ParseError(f"incomplete polynomial '{text}'")
    flush()
    return MultiPoly(n, terms)
