"""
Helper utilities for the tree spectra toolkit.
"""

from pathlib import Path

from utils.error_handler import ParseError


def strip_comment(line):
    """
    Remove a trailing `#` comment and surrounding whitespace from a line.

    Args:
        line (str): Raw input line.

    Returns:
        str: The content part of the line.
    """
    return line.split("#", 1)[0].strip()


def content_lines(text):
    """
    Yield (line number, content) for every non-empty line of a text.

    Args:
        text (str): Text with optional `#` comments.

    Yields:
        tuple: 1-based line number and the stripped content.
    """
    for number, raw in enumerate(text.splitlines(), start=1):
        content = strip_comment(raw)
        if content:
            yield number, content


def read_text(path):
    """
    Read a UTF-8 text file.

    Args:
        path (str or Path): Path to the file.

    Returns:
        str: File contents.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError(f"file not found: {path}")
    return path.read_text(encoding="utf-8")


def parse_float_list(text, name="value"):
    """
    Parse a comma separated list of floats such as `1,1,1.5`.

    Args:
        text (str): Comma separated numbers.
        name (str): Option name used in error messages.

    Returns:
        list: Parsed floats.
    """
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise ParseError(f"invalid {name} list '{text}': {e}") from e


def parse_int(token, line=None, what="integer"):
    try:
        return int(token)
    except ValueError as e:
        raise ParseError(f"expected {what}, got '{token}'", line) from e


def format_float(value, digits=12):
    """Fixed-point float formatting used by every machine-readable report."""
    return f"{value:.{digits}f}"
