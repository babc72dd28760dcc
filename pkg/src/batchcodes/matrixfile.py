"""
Text and JSON formats for incidence matrices.

Text format::

    # optional comment lines
    m n k t
    0110...   (m rows of n characters)

Lines starting with '#' are ignored, whitespace inside a row is ignored,
and the file must end with a newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import IncidenceMatrix

__all__ = ['MatrixFile', 'MatrixFormatError', 'parse_text', 'format_text',
           'parse_json', 'format_json', 'read', 'write']


class MatrixFormatError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixFile:
    matrix: IncidenceMatrix
    k: int
    t: int = 1


def format_text(mf: MatrixFile, comments=()) -> str:
    M = mf.matrix
    lines = [f"# {c}" for c in comments]
    lines.append(f"{M.m} {M.n} {mf.k} {mf.t}")
    lines += [''.join(str(int(x)) for x in row) for row in M.bits]
    return '\n'.join(lines) + '\n'


def parse_text(text: str) -> MatrixFile:
    if not text.endswith('\n'):
        raise MatrixFormatError("missing trailing newline")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith('#')]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        m, n, k, t = (int(x) for x in lines[0].split())
    except ValueError:
        raise MatrixFormatError(f"bad header {lines[0]!r}: expected 'm n k t'") from None
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"header says m={m} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body, 1):
        row = ''.join(ln.split())
        if len(row) != n:
            raise MatrixFormatError(f"row {i} has {len(row)} entries, header says n={n}")
        if set(row) - {'0', '1'}:
            raise MatrixFormatError(f"row {i} contains characters other than 0/1")
        rows.append([int(ch) for ch in row])
    try:
        M = IncidenceMatrix(np.array(rows, dtype=np.uint8).reshape(m, n))
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None
    return MatrixFile(M, k, t)


def format_json(mf: MatrixFile) -> str:
    M = mf.matrix
    doc = {
        'm': M.m, 'n': M.n, 'k': mf.k, 't': mf.t,
        'N': int(M.bits.sum()),
        'rows': [''.join(str(int(x)) for x in row) for row in M.bits],
    }
    return json.dumps(doc, indent=2) + '\n'


def parse_json(text: str) -> MatrixFile:
    try:
        doc = json.loads(text)
        rows = doc['rows']
        m, n, k, t = doc['m'], doc['n'], doc['k'], doc.get('t', 1)
    except (ValueError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad JSON matrix: {exc}") from None
    body = f"{m} {n} {k} {t}\n" + ''.join(r + '\n' for r in rows)
    return parse_text(body)


def read(path) -> MatrixFile:
    text = Path(path).read_text()
    if text.lstrip().startswith('{'):
        return parse_json(text)
    return parse_text(text)


def write(path, mf: MatrixFile, as_json: bool = False, comments=()):
    Path(path).write_text(format_json(mf) if as_json else format_text(mf, comments))
