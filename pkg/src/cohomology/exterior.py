"""
Integer exterior algebra on generators a_1..a_n.
"""

import re

from utils.error_handler import MismatchedRank, ParseError

_TERM = re.compile(r"^(?:a\d+)+$")


def _merge_sign(left, right):
    """Sign of sorting the concatenation left+right, or 0 when an index repeats."""
    if set(left) & set(right):
        return 0
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


class ExteriorClass:
    """
    Element of the exterior algebra, stored as {ascending index tuple: coefficient}.

    Coefficients are integers, or sympy expressions for symbolic products.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        cleaned = {}
        for indices, coeff in (terms or {}).items():
            indices = tuple(indices)
            order = tuple(sorted(indices))
            if len(set(order)) != len(order):
                continue
            for i in order:
                if not 1 <= i <= n:
                    raise ValueError(f"generator a{i} outside a1..a{n}")
            # permutation sign of sorting the given tuple
            sign = 1
            seq = list(indices)
            for x in range(len(seq)):
                for y in range(x + 1, len(seq)):
                    if seq[x] > seq[y]:
                        sign = -sign
            value = cleaned.get(order, 0) + sign * coeff
            cleaned[order] = value
        self.terms = {k: c for k, c in cleaned.items() if c != 0}

    @classmethod
    def unit(cls, n):
        return cls(n, {(): 1})

    @classmethod
    def generator(cls, n, i, coeff=1):
        return cls(n, {(i,): coeff})

    @classmethod
    def linear_form(cls, coefficients):
        """Sum of c_j a_j for a coefficient vector (c_1, ..., c_n)."""
        n = len(coefficients)
        return cls(n, {(j,): c for j, c in enumerate(coefficients, start=1) if c != 0})

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(k) for k in self.terms})

    def degree(self):
        """Degree of a homogeneous class; None for zero or mixed classes."""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, ExteriorClass):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"ExteriorClass({format_class(self)!r}, n={self.n})"

    def _check(self, other):
        if other.n != self.n:
            raise MismatchedRank(self.n, other.n)

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return ExteriorClass(self.n, terms)

    def __neg__(self):
        return ExteriorClass(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return ExteriorClass(self.n, {k: factor * c for k, c in self.terms.items()})

    def wedge(self, other):
        return wedge(self, other)

    __xor__ = wedge

    def coefficient(self, indices):
        return self.terms.get(tuple(sorted(indices)), 0)

    def top_coefficient(self):
        return self.terms.get(tuple(range(1, self.n + 1)), 0)


def wedge(x, y):
    """
    Skew product of two classes.

    Args:
        x (ExteriorClass): Left factor.
        y (ExteriorClass): Right factor.

    Returns:
        ExteriorClass: x wedge y.
    """
    if x.n != y.n:
        raise MismatchedRank(x.n, y.n)
    terms = {}
    for left, c1 in x.terms.items():
        for right, c2 in y.terms.items():
            sign = _merge_sign(left, right)
            if sign:
                key = tuple(sorted(left + right))
                terms[key] = terms.get(key, 0) + sign * c1 * c2
    return ExteriorClass(x.n, terms)


def wedge_all(classes, n):
    """Ordered product of classes; the unit class for an empty list."""
    result = ExteriorClass.unit(n)
    for c in classes:
        result = wedge(result, c)
    return result


def intersection_number(x, y):
    """
    Coefficient of the top form a_1...a_n in x wedge y.

    Args:
        x (ExteriorClass): First class.
        y (ExteriorClass): Second class.

    Returns:
        int: The intersection number.
    """
    return wedge(x, y).top_coefficient()


def format_class(c):
    """
    Serialize as `<coeff> a{i}a{j}...` terms sorted by index tuple.

    Args:
        c (ExteriorClass): The class.

    Returns:
        str: Class text, `0` for the zero class.
    """
    if c.is_zero():
        return "0"
    pieces = []
    for index, key in enumerate(sorted(c.terms)):
        coeff = c.terms[key]
        monomial = "".join(f"a{i}" for i in key)
        body = f"{abs(coeff)} {monomial}".rstrip()
        if index == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" {'-' if coeff < 0 else '+'} {body}")
    return "".join(pieces)


def parse_class(text, n):
    """
    Parse the text produced by format_class.

    Args:
        text (str): Class text.
        n (int): Generator count.

    Returns:
        ExteriorClass: The parsed class.
    """
    tokens = text.split()
    if tokens == ["0"]:
        return ExteriorClass(n)
    terms = {}
    sign = 1
    coeff = None
    for token in tokens + ["+"]:
        if token in ("+", "-"):
            if coeff is not None:
                terms[()] = terms.get((), 0) + coeff
                coeff = None
            sign = -1 if token == "-" else 1
        elif re.match(r"^-?\d+$", token):
            if coeff is not None:
                terms[()] = terms.get((), 0) + coeff
            coeff = sign * int(token)
        elif _TERM.match(token) and coeff is not None:
            key = tuple(int(i) for i in re.findall(r"\d+", token))
            terms[key] = terms.get(key, 0) + coeff
            coeff = None
        else:
            raise ParseError(f"unexpected token '{token}' in class '{text}'")
    return ExteriorClass(n, terms)
