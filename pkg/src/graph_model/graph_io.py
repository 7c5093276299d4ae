"""
Text format for tree graphs.

    graph n=<edges>
    edge <j> <source> <target>
    dirichlet <v1> <v2> ...
"""

from loguru import logger

from graph_model.tree_graph import build_graph
from utils.error_handler import error_handler, ParseError, GraphError
from utils.helpers import content_lines, parse_int, read_text


@error_handler
def parse_graph_text(text):
    """
    Parse the graph text format.

    Args:
        text (str): Graph description.

    Returns:
        TreeGraph: The parsed tree.
    """
    declared = None
    edges = {}
    dirichlet = []
    seen_dirichlet = False

    for number, line in content_lines(text):
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "graph":
            if declared is not None:
                raise ParseError("duplicate graph header", number)
            if len(tokens) != 2 or not tokens[1].startswith("n="):
                raise ParseError("expected 'graph n=<edges>'", number)
            declared = parse_int(tokens[1][2:], number, "edge count")
        elif keyword == "edge":
            if declared is None:
                raise ParseError("edge before graph header", number)
            if len(tokens) != 4:
                raise ParseError("expected 'edge <j> <source> <target>'", number)
            j = parse_int(tokens[1], number, "edge id")
            if j in edges:
                raise ParseError(f"edge {j} defined twice", number)
            edges[j] = (parse_int(tokens[2], number, "vertex id"), parse_int(tokens[3], number, "vertex id"))
        elif keyword == "dirichlet":
            if seen_dirichlet:
                raise ParseError("duplicate dirichlet line", number)
            seen_dirichlet = True
            dirichlet = [parse_int(t, number, "vertex id") for t in tokens[1:]]
        else:
            raise ParseError(f"unknown keyword '{keyword}'", number)

    if declared is None:
        raise ParseError("missing graph header")
    if sorted(edges) != list(range(1, declared + 1)):
        raise ParseError(f"edge ids must be exactly 1..{declared}, got {sorted(edges)}")

    try:
        return build_graph([edges[j] for j in range(1, declared + 1)], dirichlet)
    except GraphError:
        raise
    except Exception as e:
        raise ParseError(str(e)) from e


def format_graph(g):
    """
    Canonical text for a tree graph; parse_graph_text inverts it exactly.

    Args:
        g (TreeGraph): The tree.

    Returns:
        str: Graph text ending with a newline.
    """
    lines = [f"graph n={g.n}"]
    lines.extend(f"edge {j} {s} {t}" for j, s, t in g.edges)
    if g.dirichlet:
        lines.append("dirichlet " + " ".join(str(v) for v in sorted(g.dirichlet)))
    return "\n".join(lines) + "\n"


def load_graph(path):
    """Read and parse a graph file."""
    logger.info(f"Loading graph from {path}")
    return parse_graph_text(read_text(path))
