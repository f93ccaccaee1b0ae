"""Text serialization for graphs (``qnet-graph v1``).

Layout::

    qnet-graph v1
    n=<N> kind=<binary|weighted|sampled>
    <node_id> <x_km> <y_km>          (N lines)
    <i> <j> <weight>                 (one line per edge, i < j)

Floats are written with ``repr`` so a load after save is bit-exact.
"""

import numpy as np

from .errors import MalformedFileError
from .graphs import KINDS, WeightedAdjacency

MAGIC = "qnet-graph v1"


def save_graph(w, positions, path):
    n = w.n
    if positions is None:
        positions = np.zeros((n, 2))
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    if positions.shape[0] != n:
        raise ValueError(f"{positions.shape[0]} positions for {n} nodes")
    weights = np.asarray(w.weights)
    lines = [MAGIC, f"n={n} kind={w.kind}"]
    lines += [f"{i} {float(x)!r} {float(y)!r}" for i, (x, y) in enumerate(positions)]
    rows, cols = np.nonzero(np.triu(weights, 1))
    lines += [f"{i} {j} {float(weights[i, j])!r}" for i, j in zip(rows.tolist(), cols.tolist())]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_float(tok, lineno):
    try:
        return float(tok)
    except ValueError:
        raise MalformedFileError(f"not a number: {tok!r}", lineno) from None


def _parse_int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise MalformedFileError(f"not an integer: {tok!r}", lineno) from None


def load_graph(path):
    """Return ``(WeightedAdjacency, positions)``; raises MalformedFileError with the line number."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    if not lines or lines[0].strip() != MAGIC:
        raise MalformedFileError(f"expected header {MAGIC!r}", 1)
    if len(lines) < 2:
        raise MalformedFileError("missing 'n=<N> kind=<kind>' line (file truncated)", 2)
    fields = dict(tok.split("=", 1) for tok in lines[1].split() if "=" in tok)
    if "n" not in fields or "kind" not in fields:
        raise MalformedFileError("expected 'n=<N> kind=<kind>'", 2)
    n = _parse_int(fields["n"], 2)
    kind = fields["kind"]
    if n < 0:
        raise MalformedFileError("node count must be >= 0", 2)
    if kind not in KINDS:
        raise MalformedFileError(f"unknown kind {kind!r}", 2)

    positions = np.zeros((n, 2))
    for i in range(n):
        lineno = 3 + i
        if lineno > len(lines):
            raise MalformedFileError(f"expected node line for node {i}, found end of file (truncated)", lineno)
        toks = lines[lineno - 1].split()
        if len(toks) != 3:
            raise MalformedFileError("node line needs '<id> <x> <y>'", lineno)
        if _parse_int(toks[0], lineno) != i:
            raise MalformedFileError(f"expected node id {i}", lineno)
        positions[i] = (_parse_float(toks[1], lineno), _parse_float(toks[2], lineno))

    weights = np.zeros((n, n))
    for lineno in range(3 + n, len(lines) + 1):
        toks = lines[lineno - 1].split()
        if len(toks) != 3:
            raise MalformedFileError("edge line needs '<i> <j> <weight>'", lineno)
        i, j = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
        wt = _parse_float(toks[2], lineno)
        if not 0 <= i < j < n:
            raise MalformedFileError(f"edge ({i}, {j}) needs 0 <= i < j < {n}", lineno)
        if not 0 <= wt <= 1:
            raise MalformedFileError(f"weight {wt} outside [0, 1]", lineno)
        weights[i, j] = weights[j, i] = wt
    try:
        w = WeightedAdjacency(weights, kind)
    except ValueError as exc:
        raise MalformedFileError(str(exc)) from None
    return w, positions
