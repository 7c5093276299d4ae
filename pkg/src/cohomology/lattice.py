"""
Integer relation lattices among edge lengths.
"""

from dataclasses import dataclass

import numpy as np
import sympy
from scipy.linalg import null_space

from utils.error_handler import error_handler, ParseError
from utils.helpers import content_lines, parse_int, read_text


def exgcd(a, b):
    """
    Unimodular 2x2 integer matrix M with M @ [a, b] = [gcd(a, b), 0].

    Args:
        a (int): First entry.
        b (int): Second entry.

    Returns:
        numpy.ndarray: Object-dtype matrix of determinant 1.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = a * a_sign, b * b_sign

    # Euclid on [a, b] with the row operations tracked in the augmented part
    m = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while m[1, 0] != 0:
        q = m[0, 0] // m[1, 0]
        m[0] -= q * m[1]
        m = m[::-1]
    g = m[0, 0]
    m = m[:, 1:]
    m *= [a_sign, b_sign]
    if g != 0:
        m[1] = [-b_sign * b // g, a_sign * a // g]
    return m


def _inverse_unimodular(m):
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=object)


def column_reduce(rows):
    """
    Reduce an integer matrix by unimodular column operations.

    Returns (D, T) with rows == D @ T, T unimodular, and D lower triangular
    with its pivots on the diagonal.

    Args:
        rows (array-like): r x n integer matrix.

    Returns:
        tuple: (D, T) as object-dtype arrays.
    """
    d = np.array(rows, dtype=object).reshape(len(rows), -1)
    n = d.shape[1]
    t = np.eye(n, dtype=object)
    pivot = 0
    for i in range(d.shape[0]):
        if pivot >= n:
            break
        for j in range(pivot + 1, n):
            if d[i, j] == 0:
                continue
            m = exgcd(d[i, pivot], d[i, j]).T
            d[:, [pivot, j]] = d[:, [pivot, j]] @ m
            t[[pivot, j]] = _inverse_unimodular(m) @ t[[pivot, j]]
        if d[i, pivot] != 0:
            pivot += 1
    return d, t


def saturate_rows(rows, n):
    """
    Primitive basis of the saturation (rational span intersected with Z^n).

    Args:
        rows (list): Integer relation vectors.
        n (int): Ambient dimension.

    Returns:
        tuple: Basis rows, each with a positive leading entry.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return ()
    d, t = column_reduce(rows)
    rank = sum(1 for i in range(min(d.shape)) if any(d[:, i] != 0))
    basis = []
    for i in range(rank):
        row = [int(x) for x in t[i]]
        lead = next(x for x in row if x)
        basis.append(tuple(-x for x in row) if lead < 0 else tuple(row))
    return tuple(basis)


@dataclass(frozen=True)
class RelationLattice:
    """Integer dependence relations A . l = 0 among n edge lengths."""

    n: int
    rows: tuple

    @property
    def rank(self):
        return len(self.saturated().rows)

    @property
    def length_dimension(self):
        return self.n - self.rank

    def saturated(self):
        return RelationLattice(self.n, saturate_rows(self.rows, self.n))

    def is_saturated(self):
        return self.rows == self.saturated().rows

    def matrix(self):
        return np.array(self.rows, dtype=float).reshape(len(self.rows), self.n)

    def length_basis(self):
        """Orthonormal real basis of the lengths satisfying every relation."""
        if not self.rows:
            return np.eye(self.n)
        return null_space(self.matrix())

    def satisfied_by(self, lengths, tol=1e-9):
        if not self.rows:
            return True
        return bool(np.all(np.abs(self.matrix() @ np.asarray(lengths, dtype=float)) < tol * max(1.0, max(lengths))))


@error_handler
def make_lattice(rows, n):
    """
    Validate relation rows and build a lattice.

    Args:
        rows (list): Integer vectors of length n.
        n (int): Edge count.

    Returns:
        RelationLattice: The (unsaturated) lattice.
    """
    rows = tuple(tuple(int(x) for x in r) for r in rows)
    for index, r in enumerate(rows, start=1):
        if len(r) != n:
            raise ParseError(f"relation {index} has {len(r)} entries, expected {n}")
    return RelationLattice(n, rows)


def parse_relations(text, n):
    """
    Parse a relation file: one row of n integers per line, `#` comments.

    Args:
        text (str): Relation text.
        n (int): Edge count.

    Returns:
        RelationLattice: The lattice as written.
    """
    rows = []
    for number, line in content_lines(text):
        row = tuple(parse_int(token, number, "relation entry") for token in line.split())
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", number)
        rows.append(row)
    return RelationLattice(n, tuple(rows))


def format_relations(rel):
    return "".join(" ".join(str(x) for x in row) + "\n" for row in rel.rows)


def load_relations(path, n):
    return parse_relations(read_text(path), n)


def relation_minor(rel, columns):
    """
    Maximal minor of the relation matrix on the given columns.

    Args:
        rel (RelationLattice): Lattice with rank equal to len(columns).
        columns (iterable): 1-based column indices.

    Returns:
        int: The minor.
    """
    columns = sorted(columns)
    if len(columns) != len(rel.rows):
        raise ValueError(f"need {len(rel.rows)} columns, got {len(columns)}")
    if not columns:
        return 1
    return int(sympy.Matrix([[row[j - 1] for j in columns] for row in rel.rows]).det())


def complementary_minor(rel, edges):
    """Minor of the relation matrix on the columns outside `edges`."""
    return relation_minor(rel, [j for j in range(1, rel.n + 1) if j not in set(edges)])
