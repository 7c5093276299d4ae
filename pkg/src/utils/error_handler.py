"""
Error handling utilities for the tree spectra toolkit.
"""

from functools import wraps
from loguru import logger


class TreeSpectraError(Exception):
    """Base exception class for all application-specific errors."""
    pass


class GraphError(TreeSpectraError):
    """Exception raised for invalid graphs, subgraphs and graph files."""
    pass


class SecularError(TreeSpectraError):
    """Exception raised by scattering matrix and eigenspace computations."""
    pass


class StrataError(TreeSpectraError):
    """Exception raised while building or sampling strata."""
    pass


class CohomologyError(TreeSpectraError):
    """Exception raised by exterior algebra and lattice computations."""
    pass


class SpectrumError(TreeSpectraError):
    """Exception raised by the spectrum scanner."""
    pass


class CommandError(TreeSpectraError):
    """Exception raised for invalid command invocations."""
    pass


class CrossCheckError(TreeSpectraError):
    """Exception raised when two independent computations disagree."""
    pass


class ParseError(GraphError):
    """A text input could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class CycleDetected(GraphError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge} closes a cycle")


class Disconnected(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} is not connected to the rest of the graph")


class SelfLoop(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"self-loop at vertex {vertex}")


class DuplicateEdge(GraphError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"duplicate edge {edge}")


class UnknownVertex(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex}")


class InvalidComponent(GraphError):
    def __init__(self, component, reason="not a component of the graph minus the deleted vertices"):
        self.component = component
        super().__init__(f"component {sorted(component)} is {reason}")


class EndpointRuleViolated(GraphError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"boundary vertex {vertex} touches exactly one kept edge")


class InvalidArgument(GraphError):
    """An operation argument is outside its allowed range."""

    def __init__(self, name, value, requirement):
        self.name = name
        self.value = value
        super().__init__(f"{name} must be {requirement}, got {value}")


class DegenerateSystem(SecularError):
    pass


class OffTorus(SecularError):
    def __init__(self, coordinate, modulus):
        self.coordinate = coordinate
        super().__init__(f"coordinate z{coordinate} has modulus {modulus:.3e}, not on the torus")


class ContinuityViolated(SecularError):
    def __init__(self, vertex, spread):
        self.vertex = vertex
        super().__init__(f"boundary values disagree at vertex {vertex} (spread {spread:.3e})")


class UnknownEdge(SecularError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"unknown edge {edge}")


class NotOnSecularManifold(SecularError):
    pass


class SamplingFailed(StrataError):
    def __init__(self, attempts, reason=""):
        self.attempts = attempts
        super().__init__(f"sampling failed after {attempts} attempts {reason}".strip())


class VanishingVertex(StrataError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"eigenspace vanishes at vertex {vertex}")


class MismatchedRank(CohomologyError):
    def __init__(self, n1, n2):
        super().__init__(f"classes live in different tori: n={n1} and n={n2}")


class ZeroRow(CohomologyError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"relation row {index} is zero")


class OverlappingVariables(CohomologyError):
    def __init__(self, edges):
        self.edges = edges
        super().__init__(f"components share edges {sorted(edges)}")


class StepTooCoarse(SpectrumError):
    def __init__(self, k1, k2, step):
        self.step = step
        super().__init__(
            f"roots between {k1:.9f} and {k2:.9f} are not resolved at scan step {step:.3e}; halve the step"
        )


class NonPositiveLength(SpectrumError):
    def __init__(self, index, value):
        self.index = index
        super().__init__(f"edge length l{index} = {value} is not positive")


class EmptyWindow(SpectrumError):
    def __init__(self, window):
        self.window = window
        super().__init__(f"window {window} holds fewer than two eigenvalues")


class InfeasibleRelations(SpectrumError):
    pass


def error_handler(func):
    """
    Decorator for handling exceptions in a consistent way.

    Args:
        func: The function to wrap with error handling.

    Returns:
        The wrapped function.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except TreeSpectraError as e:
            logger.error(f"{type(e).__name__}: {str(e)}")
            raise
        except Exception as e:
            logger.exception(f"Unexpected error in {func.__name__}:")
            name = func.__name__.lower()
            error_type = TreeSpectraError
            if "graph" in name or "component" in name or "subgraph" in name:
                error_type = GraphError
            elif "secular" in name or "scattering" in name or "eigen" in name or "determinant" in name:
                error_type = SecularError
            elif "strat" in name or "sample" in name or "multiplicity" in name:
                error_type = StrataError
            elif "class" in name or "wedge" in name or "lattice" in name or "obstruction" in name:
                error_type = CohomologyError
            elif "spectrum" in name or "mingap" in name or "generic" in name:
                error_type = SpectrumError
            elif name.startswith("cmd_"):
                error_type = CommandError
            raise error_type(f"Error in {func.__name__}: {str(e)}") from e

    return wrapper
