"""
Tests for the graph model module.
"""

import os
import unittest
from itertools import combinations

import numpy as np

# Add src to path
import sys
sys.path.append(os.path.join(os.path.dirname(__file__), "..", "src"))

from graph_model import (
    DIRICHLET,
    NEUMANN,
    boundary_and_type,
    build_graph,
    caterpillar_graph,
    components_after_deletion,
    enumerate_type_m,
    format_graph,
    parse_graph_text,
    path_graph,
    random_tree,
    star_graph,
)
from utils.error_handler import (
    CycleDetected,
    Disconnected,
    DuplicateEdge,
    EndpointRuleViolated,
    InvalidArgument,
    InvalidComponent,
    ParseError,
    SelfLoop,
    UnknownVertex,
)


class TestBuildGraph(unittest.TestCase):
    """Tests for tree construction and validation."""

    def test_single_edge(self):
        """Test the smallest tree."""
        g = build_graph([(1, 2)])
        self.assertEqual(g.n, 1)
        self.assertEqual(g.vertices, ((1, NEUMANN), (2, NEUMANN)))
        self.assertEqual(g.endpoints(1), (1, 2))

    def test_star(self):
        """Test a star with its center last."""
        g = build_graph([(1, 4), (2, 4), (3, 4)])
        self.assertEqual(g.incident_edges(4), (1, 2, 3))
        self.assertEqual(g.degree(4), 3)
        self.assertTrue(g.is_leaf(1))

    def test_dirichlet_vertices(self):
        """Test that only listed vertices are Dirichlet."""
        g = build_graph([(1, 2), (2, 3)], dirichlet={3})
        self.assertEqual(g.dirichlet, frozenset({3}))
        self.assertEqual(g.conditions[3], DIRICHLET)
        self.assertEqual(g.conditions[2], NEUMANN)

    def test_cycle(self):
        """Test that a triangle is rejected."""
        with self.assertRaises(CycleDetected) as ctx:
            build_graph([(1, 2), (2, 3), (3, 1)])
        self.assertEqual(ctx.exception.edge, 3)

    def test_self_loop(self):
        with self.assertRaises(SelfLoop):
            build_graph([(1, 1)])

    def test_duplicate_edge(self):
        """Test that parallel edges are rejected in either orientation."""
        with self.assertRaises(DuplicateEdge) as ctx:
            build_graph([(1, 2), (2, 1)])
        self.assertEqual(ctx.exception.edge, 2)

    def test_disconnected(self):
        with self.assertRaises(Disconnected) as ctx:
            build_graph([(1, 2), (3, 4)])
        self.assertEqual(ctx.exception.vertex, 3)

    def test_unknown_dirichlet_vertex(self):
        with self.assertRaises(UnknownVertex):
            build_graph([(1, 2)], dirichlet={7})

    def test_named_constructors(self):
        """Test path, star and caterpillar shapes."""
        self.assertEqual(path_graph(3, ["left"]).dirichlet, frozenset({1}))
        self.assertEqual(star_graph(5).degree(6), 5)
        g = caterpillar_graph()
        self.assertEqual(g.n, 7)
        self.assertEqual([g.degree(v) for v in (3, 5, 7)], [3, 3, 3])

    def test_random_tree(self):
        """Test that random trees are valid trees of the requested size."""
        rng = np.random.default_rng(3)
        for n in range(1, 7):
            g = random_tree(n, rng, dirichlet_leaf_prob=0.5)
            self.assertEqual(g.n, n)
            self.assertEqual(len(g.vertices), n + 1)
            self.assertTrue(all(g.is_leaf(v) for v in g.dirichlet))


class TestSubgraphs(unittest.TestCase):
    """Tests for deletion components, boundaries and type-m enumeration."""

    def setUp(self):
        """Set up test environment."""
        self.star3 = star_graph(3)
        self.star4 = star_graph(4)
        self.path2 = path_graph(2)

    def test_components_after_deletion(self):
        self.assertEqual(components_after_deletion(self.star3, {4}), [{1}, {2}, {3}])
        self.assertEqual(components_after_deletion(self.path2, set()), [{1, 2}])
        self.assertEqual(components_after_deletion(self.path2, {2}), [{1}, {2}])

    def test_dirichlet_vertex_separates(self):
        """Test that an inner Dirichlet vertex is absent from G."""
        g = build_graph([(1, 2), (2, 3)], dirichlet={2})
        self.assertEqual(components_after_deletion(g, set()), [{1}, {2}])

    def test_components_unknown_vertex(self):
        with self.assertRaises(UnknownVertex):
            components_after_deletion(self.star3, {9})

    def test_boundary_and_type_star(self):
        h = boundary_and_type(self.star3, {4}, [{1}, {2}, {3}])
        self.assertEqual(h.type_m, 2)
        self.assertEqual(h.boundary, frozenset({4}))
        self.assertEqual(h.beta0, 3)

    def test_boundary_and_type_path(self):
        h = boundary_and_type(self.path2, {2}, [{1}, {2}])
        self.assertEqual(h.type_m, 1)

    def test_endpoint_rule(self):
        with self.assertRaises(EndpointRuleViolated) as ctx:
            boundary_and_type(self.star3, {4}, [{1}])
        self.assertEqual(ctx.exception.vertex, 4)

    def test_invalid_component(self):
        with self.assertRaises(InvalidComponent):
            boundary_and_type(self.star3, {4}, [{1, 2}])

    def test_deleted_normalized_to_boundary(self):
        """Test that deleted vertices away from kept edges are dropped."""
        h = boundary_and_type(self.star3, {1, 4}, [{2}, {3}])
        self.assertEqual(h.deleted, frozenset({4}))

    def test_enumerate_star3(self):
        result = enumerate_type_m(self.star3, 2)
        self.assertEqual(len(result), 1)
        self.assertEqual(result[0].deleted, frozenset({4}))
        self.assertEqual(len(result[0].kept_components), 3)

    def test_enumerate_path(self):
        self.assertEqual(enumerate_type_m(self.path2, 2), [])
        self.assertEqual(enumerate_type_m(path_graph(4), 2), [])

    def test_enumerate_star4(self):
        """Test the C(4,3) type-2 subgraphs and the single type-3 one."""
        type2 = enumerate_type_m(self.star4, 2)
        self.assertEqual(
            [tuple(sorted(min(k) for k in h.kept_components)) for h in type2],
            [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)],
        )
        type3 = enumerate_type_m(self.star4, 3)
        self.assertEqual(len(type3), 1)
        self.assertEqual(type3[0].beta0, 4)

    def test_enumerate_star_counts(self):
        self.assertEqual(len(enumerate_type_m(star_graph(5), 2)), 10)
        self.assertEqual(len(enumerate_type_m(star_graph(6), 2)), 20)

    def test_enumerate_types_are_exact(self):
        g = caterpillar_graph()
        for m in (2, 3):
            for h in enumerate_type_m(g, m):
                self.assertEqual(h.type_m, m)
                self.assertEqual(h.type_m, len(h.kept_components) - len(h.boundary))

    def test_enumerate_caterpillar(self):
        """Test that the three degree-3 vertices give type-2 subgraphs."""
        single = {
            tuple(sorted(h.deleted)): [sorted(k) for k in h.kept_components]
            for h in enumerate_type_m(caterpillar_graph(), 2)
            if len(h.deleted) == 1
        }
        self.assertEqual(single[(3,)], [[1], [2], [3, 4, 5, 6, 7]])
        self.assertEqual(single[(5,)], [[1, 2, 3], [4], [5, 6, 7]])
        self.assertEqual(single[(7,)], [[1, 2, 3, 4, 5], [6], [7]])

    def test_enumerate_rejects_small_m(self):
        with self.assertRaises(InvalidArgument) as ctx:
            enumerate_type_m(self.star3, 1)
        self.assertEqual(ctx.exception.value, 1)

    def _brute_force(self, g, m):
        found = set()
        neumann = sorted(g.neumann)
        for size in range(len(neumann) + 1):
            for deleted in combinations(neumann, size):
                components = components_after_deletion(g, deleted)
                for count in range(1, len(components) + 1):
                    for kept in combinations(components, count):
                        kept_edges = set().union(*kept)
                        touching = {v: [j for j in g.incident_edges(v) if j in kept_edges] for v in deleted}
                        boundary = {v for v, edges in touching.items() if edges}
                        if any(len(touching[v]) == 1 for v in boundary):
                            continue
                        if len(kept) - len(boundary) == m:
                            found.add((
                                tuple(sorted(boundary)),
                                tuple(sorted(tuple(sorted(k)) for k in kept)),
                            ))
        return found

    def test_enumerate_matches_brute_force(self):
        """Test enumeration against every deletion set and every component subset."""
        rng = np.random.default_rng(17)
        for _ in range(15):
            g = random_tree(int(rng.integers(2, 6)), rng, dirichlet_leaf_prob=0.3, dirichlet_any_prob=0.3)
            for m in (2, 3, 4):
                enumerated = [h.sort_key() for h in enumerate_type_m(g, m)]
                self.assertEqual(len(enumerated), len(set(enumerated)))
                self.assertEqual(set(enumerated), self._brute_force(g, m), f"{g.describe()} m={m}")


class TestGraphIO(unittest.TestCase):
    """Tests for the graph text format."""

    def test_round_trip(self):
        text = "graph n=3\nedge 1 1 4\nedge 2 2 4\nedge 3 4 3\ndirichlet 1 3\n"
        g = parse_graph_text(text)
        self.assertEqual(format_graph(g), text)
        self.assertEqual(parse_graph_text(format_graph(g)), g)

    def test_comments_and_order(self):
        """Test comments, blank lines and edges listed out of order."""
        text = "# star\ngraph n=2\n\nedge 2 3 2  # second\nedge 1 1 2\n"
        g = parse_graph_text(text)
        self.assertEqual(g.edges, ((1, 1, 2), (2, 3, 2)))

    def test_bad_edge_ids(self):
        with self.assertRaises(ParseError):
            parse_graph_text("graph n=2\nedge 1 1 2\nedge 3 2 3\n")

    def test_unknown_keyword_line(self):
        with self.assertRaises(ParseError) as ctx:
            parse_graph_text("graph n=1\nvertex 1\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_bad_integer(self):
        with self.assertRaises(ParseError) as ctx:
            parse_graph_text("graph n=1\nedge 1 a 2\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_cycle_in_file(self):
        with self.assertRaises(CycleDetected):
            parse_graph_text("graph n=3\nedge 1 1 2\nedge 2 2 3\nedge 3 3 1\n")


if __name__ == "__main__":
    unittest.main()
