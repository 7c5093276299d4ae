"""
Cohomology classes of strata and subtorus closures, and the discreteness obstruction.
"""

from dataclasses import dataclass, field
from string import ascii_uppercase

import sympy
from loguru import logger

from cohomology.exterior import ExteriorClass, format_class, intersection_number, wedge, wedge_all
from strata.stratum import singular_components
from utils.error_handler import error_handler, OverlappingVariables, ZeroRow

OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"


def zero_locus_class(g, edge_ids, n):
    """
    Class of the zero locus of a tree's secular polynomial: 2 times the sum of its generators.

    Args:
        g (TreeGraph): The tree, or None when edge_ids is given.
        edge_ids (iterable): Edge ids inside the ambient torus; defaults to the
            labels of g's edges.
        n (int): Ambient generator count.

    Returns:
        ExteriorClass: Degree-one class.
    """
    if edge_ids is None:
        edge_ids = [g.label(j) for j in g.edge_ids]
    return ExteriorClass(n, {(j,): 2 for j in sorted(edge_ids)})


@error_handler
def stratum_class(s, n=None):
    """
    Product over kept components of their zero-locus classes.

    Args:
        s (Stratum): The stratum.
        n (int): Ambient generator count, defaults to s.n.

    Returns:
        ExteriorClass: Homogeneous class of degree s.codim.
    """
    n = s.n if n is None else n
    seen = set()
    for k in s.components:
        if seen & k:
            raise OverlappingVariables(seen & k)
        seen |= k
    return wedge_all([zero_locus_class(None, k, n) for k in s.components], n)


@error_handler
def closure_class(rel):
    """
    Class of the subtorus closure cut out by a relation lattice.

    Rows are checked for zeros, the lattice is saturated and the linear forms
    of its basis rows are multiplied in order.

    Args:
        rel (RelationLattice): The relations.

    Returns:
        ExteriorClass: Class of degree rank(rel).
    """
    for index, row in enumerate(rel.rows, start=1):
        if not any(row):
            raise ZeroRow(index)
    basis = rel.saturated().rows
    return wedge_all([ExteriorClass.linear_form(row) for row in basis], rel.n)


@dataclass
class ObstructionEntry:
    stratum: object
    stratum_class: ExteriorClass
    product: object = None  # int, or None when degrees are not complementary

    @property
    def complementary(self):
        return self.product is not None


@dataclass
class ObstructionReport:
    """Per-stratum intersection products and the resulting verdict."""

    n: int
    rank: int
    entries: list = field(default_factory=list)

    @property
    def products(self):
        return [e.product for e in self.entries if e.complementary]

    @property
    def verdict(self):
        return OBSTRUCTED if any(p for p in self.products) else INCONCLUSIVE

    def format(self):
        lines = []
        for e in self.entries:
            h = e.stratum.h
            components = " ".join("{" + ",".join(str(j) for j in sorted(k)) + "}" for k in h.kept_components)
            product = str(e.product) if e.complementary else "not-complementary"
            lines.append(
                f"deleted={','.join(str(v) for v in sorted(h.deleted)) or '-'}\tcomponents={components}"
                f"\tclass={format_class(e.stratum_class)}\tproduct={product}"
            )
        lines.append(f"verdict={self.verdict}")
        return "\n".join(lines) + "\n"


@error_handler
def discreteness_obstruction(g, rel, strata=None):
    """
    Intersection products of every stratum class with the closure class.

    A nonzero complementary product means the closure of the path meets the
    singular locus for every length vector in the family.

    Args:
        g (TreeGraph): The tree.
        rel (RelationLattice): Relations on the same n.
        strata (list): Precomputed strata, optional.

    Returns:
        ObstructionReport: Products and verdict.
    """
    if rel.n != g.n:
        raise ValueError(f"relations have {rel.n} columns, graph has {g.n} edges")
    strata = singular_components(g) if strata is None else strata
    closure = closure_class(rel)
    rank = rel.rank
    report = ObstructionReport(n=g.n, rank=rank)
    for s in strata:
        cls = stratum_class(s, g.n)
        product = intersection_number(cls, closure) if s.codim + rank == g.n else None
        report.entries.append(ObstructionEntry(stratum=s, stratum_class=cls, product=product))
    logger.info(f"Obstruction verdict {report.verdict} over {len(strata)} strata (rank {rank})")
    return report


def symbolic_relations(n, rank):
    """Rows of symbols A1..An, B1..Bn, ... for a generic rank-r lattice."""
    return [sympy.symbols(f"{ascii_uppercase[i]}1:{n + 1}") for i in range(rank)]


@error_handler
def symbolic_obstruction(g, rank, strata=None):
    """
    Intersection products with a lattice whose entries are symbols.

    Args:
        g (TreeGraph): The tree.
        rank (int): Number of symbolic relation rows.
        strata (list): Precomputed strata, optional.

    Returns:
        list: (Stratum, sympy expression) for every complementary stratum.
    """
    if rank > len(ascii_uppercase):
        raise ValueError(f"at most {len(ascii_uppercase)} symbolic rows")
    strata = singular_components(g) if strata is None else strata
    rows = symbolic_relations(g.n, rank)
    closure = wedge_all([ExteriorClass.linear_form(list(row)) for row in rows], g.n)
    results = []
    for s in strata:
        if s.codim + rank != g.n:
            continue
        product = wedge(stratum_class(s, g.n), closure).top_coefficient()
        results.append((s, sympy.factor(sympy.expand(product))))
    return results
