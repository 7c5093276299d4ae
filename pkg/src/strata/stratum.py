"""
Strata Z(H) of the singular locus indexed by type-m subgraphs.
"""

from dataclasses import dataclass

from loguru import logger

from graph_model.subgraphs import enumerate_type_m
from graph_model.tree_graph import DIRICHLET, TreeGraph
from secular_engine.multipoly import format_polynomial
from secular_engine.scattering import secular_polynomial
from utils.config import Config
from utils.error_handler import error_handler, InvalidComponent


@dataclass(frozen=True)
class Stratum:
    """Z(H): the common zero set of the component secular polynomials of H."""

    h: object          # OpenSubgraph
    systems: tuple     # one MultiPoly per kept component, in the ambient n variables
    n: int

    @property
    def codim(self):
        return len(self.systems)

    @property
    def m(self):
        return self.h.type_m

    @property
    def components(self):
        return self.h.kept_components

    @property
    def constrained_edges(self):
        return frozenset(j for p in self.systems for j in p.variables())

    @property
    def dimension(self):
        return self.n - self.codim

    def contains(self, z, tol=None):
        """True when every system vanishes at z relative to its l1 norm."""
        tol = Config.SAMPLE_AVOIDANCE if tol is None else tol
        return all(abs(p.evaluate(z)) < tol * p.l1_norm() for p in self.systems)


@error_handler
def component_graph(g, h, k):
    """
    Tree on the edges of one kept component.

    Deleted vertices adjacent to the component become Dirichlet; every other
    vertex keeps its condition. Edges are renumbered 1..|k| in ascending order
    of their original ids, which are kept in `edge_labels`.

    Args:
        g (TreeGraph): The tree.
        h (OpenSubgraph): Subgraph containing k.
        k (frozenset): Edge ids of one kept component.

    Returns:
        TreeGraph: The component tree.
    """
    k = frozenset(k)
    if k not in h.kept_components:
        raise InvalidComponent(k, "not a kept component of the subgraph")

    labels = tuple(sorted(k))
    edges = tuple(
        (local, g.source(j), g.target(j)) for local, j in enumerate(labels, start=1)
    )
    touched = sorted({v for _, s, t in edges for v in (s, t)})
    vertices = tuple(
        (v, DIRICHLET if v in h.deleted else g.conditions[v]) for v in touched
    )
    return TreeGraph(vertices=vertices, edges=edges, edge_labels=labels)


@error_handler
def build_stratum(g, h):
    """
    Stratum of a subgraph: one lifted secular polynomial per kept component.

    Args:
        g (TreeGraph): The tree.
        h (OpenSubgraph): A valid subgraph of g.

    Returns:
        Stratum: The stratum Z(H).
    """
    systems = []
    for k in h.kept_components:
        component = component_graph(g, h, k)
        local = secular_polynomial(component)
        mapping = {i: component.label(i) for i in range(1, component.n + 1)}
        systems.append(local.lift(g.n, mapping))
    return Stratum(h=h, systems=tuple(systems), n=g.n)


@error_handler
def singular_components(g):
    """
    All strata of type m >= 2, sorted by codimension.

    Types are scanned upwards until two consecutive types yield nothing.

    Args:
        g (TreeGraph): The tree.

    Returns:
        list: Stratum objects.
    """
    strata = []
    empty_run = 0
    m = 2
    while empty_run < 2 and m <= g.n:
        subgraphs = enumerate_type_m(g, m)
        empty_run = 0 if subgraphs else empty_run + 1
        strata.extend(build_stratum(g, h) for h in subgraphs)
        m += 1
    strata.sort(key=lambda s: (s.codim, s.m, s.h.sort_key()))
    logger.info(f"Found {len(strata)} singular strata for {g.describe()}")
    return strata


def strata_containing(g, z, strata=None, tol=None):
    """
    Enumerated strata whose systems all vanish at z.

    Args:
        g (TreeGraph): The tree.
        z (array-like): Torus point.
        strata (list): Precomputed strata, optional.
        tol (float): Relative vanishing tolerance.

    Returns:
        list: The containing strata.
    """
    strata = singular_components(g) if strata is None else strata
    return [s for s in strata if s.contains(z, tol)]


def format_stratum(s):
    """Text block describing one stratum."""
    lines = [
        f"stratum m={s.m} codim={s.codim}",
        "  deleted " + " ".join(str(v) for v in sorted(s.h.deleted)),
    ]
    for k, p in zip(s.components, s.systems):
        edges = " ".join(str(j) for j in sorted(k))
        lines.append(f"  component {edges} : {format_polynomial(p)}")
    return "\n".join(line.rstrip() for line in lines)


def format_strata_report(strata):
    if not strata:
        return "none\n"
    return "\n".join(format_stratum(s) for s in strata) + "\n"
