"""
Command implementations shared by the CLI and the web service.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from loguru import logger

from cohomology.lattice import load_relations, RelationLattice
from cohomology.obstruction import discreteness_obstruction, symbolic_obstruction
from graph_model.graph_io import load_graph
from graph_model.subgraphs import enumerate_type_m
from graph_model.tree_graph import caterpillar_graph, path_graph, star_graph
from secular_engine.multipoly import format_polynomial
from secular_engine.scattering import (
    cofactor_determinant,
    fraction_free_determinant,
    scattering_matrix,
    secular_polynomial,
)
from spectrum.genericity import genericity_trial
from spectrum.scanner import compute_spectrum, format_spectrum, mingap_estimate
from strata.multiplicity import run_verification
from strata.stratum import build_stratum, format_strata_report, singular_components
from utils.config import Config
from utils.error_handler import (
    error_handler,
    CommandError,
    CrossCheckError,
    InvalidArgument,
    ParseError,
    TreeSpectraError,
)
from utils.helpers import format_float, parse_float_list

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_CROSS_CHECK = 4

_BUILTIN = re.compile(r"^(path|star):(\d+)$")

REQUIRED_OPTIONS = {
    "secular": [],
    "strata": [],
    "obstruction": [],
    "spectrum": ["lengths", "kmax"],
    "mingap": ["lengths", "window"],
    "verify": ["seed"],
    "genericity": ["relations", "seed", "kmax"],
}


class UsageError(CommandError):
    """Exception raised for missing or malformed command options."""
    pass


@dataclass
class Invocation:
    """One command with its graph and options."""

    command: str
    graph: str
    options: dict = field(default_factory=dict)

    def option(self, name, default=None):
        value = self.options.get(name)
        return default if value is None else value

    def validate(self):
        if self.command not in REQUIRED_OPTIONS:
            raise UsageError(f"unknown command '{self.command}'")
        missing = [name for name in REQUIRED_OPTIONS[self.command] if self.options.get(name) is None]
        if missing:
            raise UsageError(f"command '{self.command}' needs --{', --'.join(missing)}")
        if self.command == "obstruction" and self.option("relations") is None and self.option("symbolic") is None:
            raise UsageError("command 'obstruction' needs --relations or --symbolic")


def resolve_graph(source):
    """
    Load a graph file, or build a named graph: `path:N`, `star:N` or `caterpillar`.

    Args:
        source (str): File path or graph name.

    Returns:
        TreeGraph: The graph.
    """
    if Path(source).exists():
        return load_graph(source)
    if source == "caterpillar":
        return caterpillar_graph()
    match = _BUILTIN.match(source)
    if match:
        kind, n = match.group(1), int(match.group(2))
        return path_graph(n) if kind == "path" else star_graph(n)
    raise ParseError(f"no graph file or named graph '{source}'")


def _lengths(value, n):
    lengths = parse_float_list(value, "length") if isinstance(value, str) else [float(x) for x in value]
    if len(lengths) != n:
        raise UsageError(f"expected {n} lengths, got {len(lengths)}")
    return lengths


def _window(value):
    window = parse_float_list(value, "window") if isinstance(value, str) else [float(x) for x in value]
    if len(window) != 2 or not window[0] < window[1]:
        raise UsageError(f"window must be K0,K1 with K0 < K1, got {value}")
    return tuple(window)


def _relations(value, n):
    if isinstance(value, RelationLattice):
        return value
    return load_relations(value, n)


@error_handler
def cmd_secular(g, **options):
    """Canonical secular polynomial as one line of text."""
    return format_polynomial(secular_polynomial(g)) + "\n"


@error_handler
def cmd_strata(g, m=None, **options):
    """Stratum report for one type, or for the whole singular locus."""
    if m is None:
        strata = singular_components(g)
    else:
        strata = [build_stratum(g, h) for h in enumerate_type_m(g, int(m))]
    return format_strata_report(strata)


@error_handler
def cmd_obstruction(g, relations=None, symbolic=None, **options):
    """Per-stratum intersection products and verdict, or symbolic products."""
    if symbolic is not None:
        lines = []
        for s, product in symbolic_obstruction(g, int(symbolic)):
            lines.append(f"deleted={','.join(str(v) for v in sorted(s.h.deleted)) or '-'}\tproduct={product}")
        return ("\n".join(lines) + "\n") if lines else "none\n"
    rel = _relations(relations, g.n)
    return discreteness_obstruction(g, rel).format()


@error_handler
def cmd_spectrum(g, lengths=None, kmax=None, output_format="human", tol_root=None, tol_rank=None, **options):
    """Spectrum report up to kmax."""
    report = compute_spectrum(
        g, _lengths(lengths, g.n), float(kmax), tol_root=tol_root, tol_rank=tol_rank,
    )
    return format_spectrum(report, machine=output_format == "machine")


@error_handler
def cmd_mingap(g, lengths=None, window=None, tol_root=None, tol_rank=None, **options):
    """Mingap estimate over a window."""
    gap = mingap_estimate(g, _lengths(lengths, g.n), _window(window), tol_root=tol_root, tol_rank=tol_rank)
    return f"mingap_estimate={format_float(gap)}\n"


@error_handler
def cmd_verify(g, seed=None, samples=None, tol_rank=None, **options):
    """
    Cross-check suite: exact determinants, multiplicity formula and reconstruction.

    Raises CrossCheckError when two independent computations disagree.
    """
    matrix = scattering_matrix(g)
    if cofactor_determinant(matrix) != fraction_free_determinant(matrix):
        raise CrossCheckError("cofactor and fraction-free determinants differ")
    samples = int(samples) if samples is not None else 100
    summary = run_verification(g, samples, int(seed), tol_rank=tol_rank)
    text = "determinants: agree\n" + summary.format() + "\n"
    if summary.agreement_rate < Config.VERIFY_AGREEMENT:
        raise CrossCheckError(f"multiplicity formula agreement {summary.agreement_rate:.2f} below {Config.VERIFY_AGREEMENT}")
    if summary.reconstruction_max_error > Config.RECONSTRUCTION_TOLERANCE:
        raise CrossCheckError(f"reconstruction error {summary.reconstruction_max_error:.2e}")
    return text


@error_handler
def cmd_genericity(g, relations=None, samples=None, kmax=None, seed=None, tol_root=None, tol_rank=None, **options):
    """Fraction of simple spectra over a relation family."""
    rel = _relations(relations, g.n)
    result = genericity_trial(
        g, rel, int(samples) if samples is not None else 20, float(kmax), int(seed),
        tol_root=tol_root, tol_rank=tol_rank,
    )
    return result.format() + "\n"


COMMANDS = {
    "secular": cmd_secular,
    "strata": cmd_strata,
    "obstruction": cmd_obstruction,
    "spectrum": cmd_spectrum,
    "mingap": cmd_mingap,
    "verify": cmd_verify,
    "genericity": cmd_genericity,
}


def exit_code_for(error):
    """Process exit code for an exception raised by a command."""
    if isinstance(error, (ParseError, InvalidArgument, UsageError)):
        return EXIT_USAGE
    if isinstance(error, CrossCheckError):
        return EXIT_CROSS_CHECK
    if isinstance(error, TreeSpectraError):
        return EXIT_PRECONDITION
    return EXIT_UNEXPECTED


def run(invocation):
    """
    Validate and execute an invocation.

    Args:
        invocation (Invocation): The command.

    Returns:
        tuple: (exit code, output text).
    """
    try:
        invocation.validate()
        g = resolve_graph(invocation.graph)
        logger.info(f"Running '{invocation.command}' on {g.describe()}")
        output = COMMANDS[invocation.command](g, **invocation.options)
    except Exception as e:
        code = exit_code_for(e)
        if code == EXIT_UNEXPECTED:
            logger.exception(f"Unexpected failure in '{invocation.command}':")
        else:
            logger.error(f"{type(e).__name__}: {e}")
        return code, ""
    logger.success(f"Command '{invocation.command}' finished")
    return EXIT_OK, output
