"""
Command layer: invocations and their text outputs.
"""

from .runner import (
    Invocation,
    UsageError,
    COMMANDS,
    EXIT_OK,
    EXIT_UNEXPECTED,
    EXIT_USAGE,
    EXIT_PRECONDITION,
    EXIT_CROSS_CHECK,
    resolve_graph,
    cmd_secular,
    cmd_strata,
    cmd_obstruction,
    cmd_spectrum,
    cmd_mingap,
    cmd_verify,
    cmd_genericity,
    exit_code_for,
    run,
)
