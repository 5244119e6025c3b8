"""Line-oriented text formats shared by polynomials, expansions and samples.

All formats are whitespace-separated records, one per line.  ``#`` starts
a comment that runs to the end of the line; blank lines are skipped.
"""

from __future__ import annotations

import contextlib
import io
import math
import sys
from typing import Iterator, TextIO

from .errors import ParseError

__all__ = ["format_real", "read_records", "open_text"]


def format_real(value: float) -> str:
    """Render `value` with 12 significant digits, shortest form."""
    s = f"{value:.12g}"
    return "0" if s == "-0" else s


def _as_stream(source) -> TextIO:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def read_records(source, kinds, name: str = "<input>") -> Iterator[tuple[int, tuple]]:
    """Yield ``(lineno, values)`` per data line, converting tokens with `kinds`.

    Parameters
    ----------
    source : str or text stream
        Text itself (``str``) or an open stream.
    kinds : sequence of callables
        One converter per column, e.g. ``(int, int, float)``.
    name : str
        Used in error messages together with the line number.
    """
    stream = _as_stream(source)
    for lineno, line in enumerate(stream, start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != len(kinds):
            raise ParseError(
                f"expected {len(kinds)} fields, found {len(tokens)}", name, lineno
            )
        try:
            values = tuple(kind(tok) for kind, tok in zip(kinds, tokens))
        except ValueError as exc:
            raise ParseError(f"bad number ({exc})", name, lineno) from None
        for v in values:
            if isinstance(v, float) and not math.isfinite(v):
                raise ParseError("non-finite value", name, lineno)
        yield lineno, values


def open_text(path: str, mode: str = "r"):
    """Open `path` as UTF-8 text; ``"-"`` selects stdin/stdout."""
    if path == "-":
        return contextlib.nullcontext(sys.stdin if "r" in mode else sys.stdout)
    return open(path, mode, encoding="utf-8")
