"""
Tree graph model: validated metric tree skeletons with Neumann/Dirichlet vertices.
"""

from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from loguru import logger
from networkx.utils import UnionFind

from utils.error_handler import (
    error_handler,
    CycleDetected,
    Disconnected,
    DuplicateEdge,
    GraphError,
    SelfLoop,
    UnknownVertex,
)

NEUMANN = "N"
DIRICHLET = "D"


@dataclass(frozen=True)
class TreeGraph:
    """
    Combinatorial tree with oriented edges and a condition per vertex.

    Edge j (1-based) runs from `edges[j-1][1]` (source) to `edges[j-1][2]`
    (target). Dirichlet vertices count as boundary of the graph: they carry
    no continuity or current condition and are never part of a subgraph
    boundary.
    """

    vertices: tuple  # ((vertex id, condition), ...) sorted by id
    edges: tuple     # ((edge id, source, target), ...) sorted by edge id
    edge_labels: tuple = None  # edge ids in an enclosing graph, for component trees

    @property
    def n(self):
        return len(self.edges)

    def label(self, edge_id):
        """Edge id in the enclosing graph (the edge id itself for top-level graphs)."""
        return self.edge_labels[edge_id - 1] if self.edge_labels else edge_id

    @cached_property
    def vertex_ids(self):
        return tuple(v for v, _ in self.vertices)

    @cached_property
    def conditions(self):
        return dict(self.vertices)

    @cached_property
    def dirichlet(self):
        return frozenset(v for v, c in self.vertices if c == DIRICHLET)

    @cached_property
    def neumann(self):
        return frozenset(v for v, c in self.vertices if c == NEUMANN)

    @cached_property
    def edge_ids(self):
        return tuple(j for j, _, _ in self.edges)

    @cached_property
    def _endpoints(self):
        return {j: (s, t) for j, s, t in self.edges}

    @cached_property
    def _incidence(self):
        incidence = {v: [] for v in self.vertex_ids}
        for j, s, t in self.edges:
            incidence[s].append(j)
            incidence[t].append(j)
        return {v: tuple(sorted(js)) for v, js in incidence.items()}

    def endpoints(self, edge_id):
        """Return (source, target) of an edge."""
        return self._endpoints[edge_id]

    def source(self, edge_id):
        return self._endpoints[edge_id][0]

    def target(self, edge_id):
        return self._endpoints[edge_id][1]

    def incident_edges(self, vertex):
        """
        Edge ids incident to a vertex, ascending.

        Args:
            vertex (int): Vertex id.

        Returns:
            tuple: Sorted incident edge ids.
        """
        if vertex not in self._incidence:
            raise UnknownVertex(vertex)
        return self._incidence[vertex]

    def degree(self, vertex):
        return len(self.incident_edges(vertex))

    def is_dirichlet(self, vertex):
        return self.conditions[vertex] == DIRICHLET

    def is_leaf(self, vertex):
        return self.degree(vertex) == 1

    def other_end(self, edge_id, vertex):
        s, t = self._endpoints[edge_id]
        return t if vertex == s else s

    @cached_property
    def max_degree(self):
        return max(len(js) for js in self._incidence.values())

    def to_networkx(self):
        """
        Undirected networkx view with edge ids stored on the `id` attribute.

        Returns:
            nx.Graph: The underlying tree.
        """
        graph = nx.Graph()
        for v, condition in self.vertices:
            graph.add_node(v, condition=condition)
        for j, s, t in self.edges:
            graph.add_edge(s, t, id=j)
        return graph

    def describe(self):
        return f"tree with n={self.n} edges, {len(self.vertices)} vertices, dirichlet={sorted(self.dirichlet)}"


@error_handler
def build_graph(edge_list, dirichlet=()):
    """
    Validate an oriented edge list and build a tree graph.

    Edge ids are assigned 1..n in input order. Every vertex not listed in
    `dirichlet` is Neumann.

    Args:
        edge_list (list): (source, target) pairs of integer vertex ids.
        dirichlet (iterable): Vertex ids carrying the Dirichlet condition.

    Returns:
        TreeGraph: The validated tree.
    """
    edge_list = [(int(s), int(t)) for s, t in edge_list]
    if not edge_list:
        raise GraphError("a tree needs at least one edge")

    vertex_ids = sorted({v for pair in edge_list for v in pair})
    dirichlet = set(int(v) for v in dirichlet)
    for v in sorted(dirichlet):
        if v not in vertex_ids:
            raise UnknownVertex(v)

    seen = set()
    forest = UnionFind(vertex_ids)
    for j, (s, t) in enumerate(edge_list, start=1):
        if s == t:
            raise SelfLoop(s)
        key = frozenset((s, t))
        if key in seen:
            raise DuplicateEdge(j)
        seen.add(key)
        if forest[s] == forest[t]:
            raise CycleDetected(j)
        forest.union(s, t)

    root = forest[vertex_ids[0]]
    for v in vertex_ids:
        if forest[v] != root:
            raise Disconnected(v)

    vertices = tuple((v, DIRICHLET if v in dirichlet else NEUMANN) for v in vertex_ids)
    edges = tuple((j, s, t) for j, (s, t) in enumerate(edge_list, start=1))
    graph = TreeGraph(vertices=vertices, edges=edges)
    logger.debug(f"Built {graph.describe()}")
    return graph


def path_graph(n, dirichlet_ends=()):
    """
    Path with n edges on vertices 1..n+1, oriented left to right.

    Args:
        n (int): Number of edges.
        dirichlet_ends (iterable): Any of "left", "right".

    Returns:
        TreeGraph: The path graph.
    """
    ends = set(dirichlet_ends)
    dirichlet = set()
    if "left" in ends:
        dirichlet.add(1)
    if "right" in ends:
        dirichlet.add(n + 1)
    return build_graph([(i, i + 1) for i in range(1, n + 1)], dirichlet)


def star_graph(n, dirichlet_leaves=()):
    """Star with leaves 1..n oriented towards the center n+1."""
    return build_graph([(i, n + 1) for i in range(1, n + 1)], dirichlet_leaves)


def caterpillar_graph():
    """
    Seven-edge caterpillar with three degree-3 spine vertices.

    Vertex 3 carries pendant edges e1, e2; vertex 5 carries e4; vertex 7
    carries e6, e7. The spine is e3 (3-5) and e5 (5-7). This layout is
    reconstructed from its three published codimension-3 stratum classes.
    """
    return build_graph([(1, 3), (2, 3), (3, 5), (4, 5), (5, 7), (6, 7), (8, 7)])


def random_tree(n, rng, dirichlet_leaf_prob=0.0, dirichlet_any_prob=0.0):
    """
    Uniformly attach each new vertex to an earlier one, with random orientation.

    Args:
        n (int): Number of edges.
        rng (numpy.random.Generator): Random source.
        dirichlet_leaf_prob (float): Probability that a leaf is made Dirichlet.
        dirichlet_any_prob (float): Probability that any other vertex is made Dirichlet.

    Returns:
        TreeGraph: A random tree on vertices 1..n+1.
    """
    edge_list = []
    for v in range(2, n + 2):
        parent = int(rng.integers(1, v))
        edge_list.append((parent, v) if rng.random() < 0.5 else (v, parent))

    degree = {}
    for s, t in edge_list:
        degree[s] = degree.get(s, 0) + 1
        degree[t] = degree.get(t, 0) + 1

    dirichlet = set()
    for v in range(1, n + 2):
        p = dirichlet_leaf_prob if degree[v] == 1 else dirichlet_any_prob
        if p > 0 and rng.random() < p:
            dirichlet.add(v)
    return build_graph(edge_list, dirichlet)
