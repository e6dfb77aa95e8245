"""Bit-exact file formats for matrices and block elements.

Matrix file:  first line ``KHM k=<k> n=<n>``, then n lines of n characters
from ``+``/``-``, LF endings, no trailing whitespace.

Blocks file:  ``k=<k>`` then four lines ``a=<element>`` .. ``d=<element>``
in the textual element grammar.
"""

from __future__ import annotations

import re

import numpy as np

from . import group_algebra as ga
from .errors import ParseError
from .kimura import KimuraBlocks

_HEADER_RE = re.compile(r"^KHM k=(\d+) n=(\d+)$")


def format_matrix(H: np.ndarray, k: int) -> str:
    H = np.asarray(H)
    n = H.shape[0]
    lines = [f"KHM k={k} n={n}"]
    for row in H:
        lines.append("".join("+" if v == 1 else "-" for v in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple:
    """Return (H, k) from the matrix file format."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError("empty matrix file")
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ParseError(f"bad header line {lines[0]!r}")
    k, n = int(m.group(1)), int(m.group(2))
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for idx, line in enumerate(lines[1:], start=1):
        if len(line) != n or any(ch not in "+-" for ch in line):
            raise ParseError(f"bad matrix row on line {idx + 1}")
        rows.append([1 if ch == "+" else -1 for ch in line])
    return np.array(rows, dtype=np.int64), k


def format_blocks(blocks: KimuraBlocks) -> str:
    lines = [f"k={blocks.k}"]
    for name, w in zip("abcd", blocks.elements):
        lines.append(f"{name}={ga.format_element(w)}")
    return "\n".join(lines) + "\n"


def parse_blocks(text: str) -> KimuraBlocks:
    lines = [ln for ln in text.split("\n") if ln != ""]
    if len(lines) != 5:
        raise ParseError(f"expected 5 lines (k= and a=..d=), found {len(lines)}")
    m = re.match(r"^k=(\d+)$", lines[0])
    if not m:
        raise ParseError(f"bad k line {lines[0]!r}")
    k = int(m.group(1))
    elements = []
    for name, line in zip("abcd", lines[1:]):
        prefix = f"{name}="
        if not line.startswith(prefix):
            raise ParseError(f"expected line starting with {prefix!r}, got {line!r}")
        elements.append(ga.parse_element(line[len(prefix):], k))
    return KimuraBlocks(k, *elements)


def write_matrix(path, H: np.ndarray, k: int) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_matrix(H, k))


def read_matrix(path) -> tuple:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix(fh.read())


def write_blocks(path, blocks: KimuraBlocks) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_blocks(blocks))


def read_blocks(path) -> KimuraBlocks:
    with open(path, "r", encoding="ascii") as fh:
        return parse_blocks(fh.read())
