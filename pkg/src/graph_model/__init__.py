"""
Graph model: metric tree skeletons and their open subgraphs.
"""

from .tree_graph import (
    TreeGraph,
    NEUMANN,
    DIRICHLET,
    build_graph,
    path_graph,
    star_graph,
    caterpillar_graph,
    random_tree,
)
from .subgraphs import OpenSubgraph, components_after_deletion, boundary_and_type, enumerate_type_m
from .graph_io import parse_graph_text, format_graph, load_graph
