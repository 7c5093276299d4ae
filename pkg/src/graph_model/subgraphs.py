"""
Open subgraphs of a tree: deletion sets, kept components and type-m enumeration.
"""

from dataclasses import dataclass
from itertools import combinations

import networkx as nx
from loguru import logger

from utils.error_handler import (
    error_handler,
    EndpointRuleViolated,
    InvalidArgument,
    InvalidComponent,
    UnknownVertex,
)


@dataclass(frozen=True)
class OpenSubgraph:
    """
    An open subgraph H: kept components of G minus a deletion set.

    `deleted` is normalized to the boundary of H in G, i.e. the deleted
    vertices adjacent to a kept edge.
    """

    deleted: frozenset
    kept_components: tuple  # tuple of frozensets of edge ids, ordered by sorted tuple

    @property
    def boundary(self):
        return self.deleted

    @property
    def beta0(self):
        return len(self.kept_components)

    @property
    def type_m(self):
        return self.beta0 - len(self.boundary)

    @property
    def edges(self):
        return frozenset().union(*self.kept_components) if self.kept_components else frozenset()

    def sort_key(self):
        return (tuple(sorted(self.deleted)), tuple(tuple(sorted(k)) for k in self.kept_components))

    def describe(self):
        parts = " ".join("{" + ",".join(str(j) for j in sorted(k)) + "}" for k in self.kept_components)
        return f"deleted={sorted(self.deleted)} components={parts} m={self.type_m}"


def _component_order(component):
    return tuple(sorted(component))


def components_after_deletion(g, deleted):
    """
    Connected components of G minus the deleted and Dirichlet vertices.

    Two edges lie in the same component when they share a surviving vertex;
    an edge whose endpoints are both removed is its own component.

    Args:
        g (TreeGraph): The tree.
        deleted (iterable): Vertex ids to delete.

    Returns:
        list: Edge-id frozensets in deterministic order.
    """
    deleted = set(deleted)
    for v in sorted(deleted):
        if v not in g.conditions:
            raise UnknownVertex(v)
    removed = deleted | set(g.dirichlet)

    linkage = nx.Graph()
    linkage.add_nodes_from(g.edge_ids)
    for v in g.vertex_ids:
        if v in removed:
            continue
        incident = g.incident_edges(v)
        linkage.add_edges_from(zip(incident, incident[1:]))

    components = [frozenset(c) for c in nx.connected_components(linkage)]
    return sorted(components, key=_component_order)


def _check_subgraph(g, deleted, kept):
    deleted = set(deleted)
    for v in sorted(deleted):
        if v not in g.conditions:
            raise UnknownVertex(v)

    available = set(components_after_deletion(g, deleted))
    kept = [frozenset(k) for k in kept]
    if len(set(kept)) != len(kept):
        duplicate = next(k for k in kept if kept.count(k) > 1)
        raise InvalidComponent(duplicate, "listed more than once")
    for k in kept:
        if k not in available:
            raise InvalidComponent(k)

    kept_edges = frozenset().union(*kept) if kept else frozenset()
    boundary = set()
    for v in sorted(deleted - set(g.dirichlet)):
        touching = [j for j in g.incident_edges(v) if j in kept_edges]
        if not touching:
            continue
        if len(touching) == 1:
            raise EndpointRuleViolated(v)
        boundary.add(v)

    return OpenSubgraph(
        deleted=frozenset(boundary),
        kept_components=tuple(sorted(kept, key=_component_order)),
    )


@error_handler
def boundary_and_type(g, deleted, kept):
    """
    Build an open subgraph and compute its boundary and type.

    Args:
        g (TreeGraph): The tree.
        deleted (iterable): Deleted Neumann vertex ids.
        kept (list): Edge-id sets, each a component of G minus `deleted`.

    Returns:
        OpenSubgraph: The validated subgraph.
    """
    h = _check_subgraph(g, deleted, kept)
    logger.debug(f"Open subgraph {h.describe()}")
    return h


@error_handler
def enumerate_type_m(g, m):
    """
    Enumerate every type-m open subgraph satisfying the no-endpoint rule.

    Deletion candidates are Neumann vertices of degree at least two, since a
    deleted leaf either touches no kept edge or exactly one.

    Args:
        g (TreeGraph): The tree.
        m (int): Required type, at least 2.

    Returns:
        list: OpenSubgraph objects sorted by (deleted set, kept sets).
    """
    if m < 2:
        raise InvalidArgument("m", m, "at least 2")

    candidates = sorted(v for v in g.neumann if g.degree(v) >= 2)
    found = {}
    for size in range(len(candidates) + 1):
        for deleted in combinations(candidates, size):
            components = components_after_deletion(g, deleted)
            # type is at most |kept| - |deleted touching kept|
            if len(components) < m:
                continue
            for count in range(m, len(components) + 1):
                for kept in combinations(components, count):
                    try:
                        h = _check_subgraph(g, deleted, kept)
                    except EndpointRuleViolated:
                        continue
                    if h.type_m == m:
                        found[h.sort_key()] = h

    result = [found[key] for key in sorted(found)]
    logger.debug(f"Found {len(result)} type-{m} subgraphs")
    return result
