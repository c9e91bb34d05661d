"""Plain-text generator matrix files.

Format::

    # comment lines start with '#'
    p k l n
    <l lines of n base-10 integers>

Entries are reduced modulo p^k on load; each reduced entry is reported.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .ring import RingSpec

log = logging.getLogger(__name__)


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class MatrixFile:
    spec: RingSpec
    matrix: np.ndarray
    warnings: list[str] = field(default_factory=list)


def _tokens(line: str):
    # (1-based column, token) pairs
    col = 0
    for part in line.split():
        col = line.index(part, col)
        yield col + 1, part
        col += len(part)


def parse_matrix(text: str) -> MatrixFile:
    lines = [
        (no, raw) for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise MatrixParseError("empty matrix file")

    def ints(no, raw):
        out = []
        for col, tok in _tokens(raw):
            try:
                out.append((col, int(tok, 10)))
            except ValueError:
                raise MatrixParseError(f"not a base-10 integer: {tok!r}", no, col) from None
        return out

    no, raw = lines[0]
    header = ints(no, raw)
    if len(header) != 4:
        raise MatrixParseError(f"header needs 'p k l n', got {len(header)} fields", no)
    p, k, ell, n = (v for _, v in header)
    try:
        spec = RingSpec(p, k)
    except ValueError as exc:
        raise MatrixParseError(str(exc), no) from None
    if ell < 1 or n < 1:
        raise MatrixParseError("l and n must be positive", no)
    body = lines[1:]
    if len(body) != ell:
        raise MatrixParseError(f"expected {ell} matrix rows, found {len(body)}", body[-1][0] if body else no)

    warnings: list[str] = []
    M = np.zeros((ell, n), dtype=np.int64)
    for i, (no, raw) in enumerate(body):
        row = ints(no, raw)
        if len(row) != n:
            raise MatrixParseError(f"expected {n} entries, found {len(row)}", no)
        for j, (col, v) in enumerate(row):
            r = v % spec.q
            if r != v:
                msg = f"line {no}, column {col}: {v} reduced to {r} mod {spec.q}"
                log.warning(msg)
                warnings.append(msg)
            M[i, j] = r
    return MatrixFile(spec, M, warnings)


def load_matrix(path) -> MatrixFile:
    return parse_matrix(Path(path).read_text())


def format_matrix(matrix, spec: RingSpec, comment: str | None = None) -> str:
    M = np.asarray(matrix)
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"{spec.p} {spec.k} {M.shape[0]} {M.shape[1]}")
    out.extend(" ".join(str(int(x)) for x in row) for row in M)
    return "\n".join(out) + "\n"
