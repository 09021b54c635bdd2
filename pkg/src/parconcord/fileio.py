"""Plain-text file formats for problems and estimates.

Problem file: a header line "n,p,centered" (centered is 0 or 1) followed by
n comma-separated data rows of p values.

Estimate file: a header line "p,lambda,iterations,delta" followed by one
"i,j,value" line per stored entry with 1-based indices and i <= j.  Only
nonzero entries are stored, except the diagonal which is always complete.
The same format stores ground-truth matrices (with lambda, iterations and
delta set to zero).

All floats are written with 17 significant digits, which round-trips IEEE
doubles exactly.
"""

import numpy as np

from .model import DataMatrix, PrecisionEstimate


class FileFormatError(ValueError):
    """A problem or estimate file does not match its documented layout."""


def _fmt(x):
    return f"{float(x):.17g}"


def _parse_float(text, path, lineno, what):
    try:
        return float(text)
    except ValueError:
        raise FileFormatError(
            f"{path}:{lineno}: cannot parse {what} from {text!r}"
        ) from None


def _parse_int(text, path, lineno, what):
    try:
        return int(text)
    except ValueError:
        raise FileFormatError(
            f"{path}:{lineno}: cannot parse {what} from {text!r}"
        ) from None


def write_problem(path, data: DataMatrix):
    with open(path, "w") as fh:
        fh.write(f"{data.n},{data.p},{1 if data.centered else 0}\n")
        for row in data.values:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_problem(path) -> DataMatrix:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FileFormatError(f"{path}: empty file")
    head = lines[0].split(",")
    if len(head) != 3:
        raise FileFormatError(f"{path}:1: header must be 'n,p,centered'")
    n = _parse_int(head[0], path, 1, "n")
    p = _parse_int(head[1], path, 1, "p")
    flag = _parse_int(head[2], path, 1, "centered flag")
    if flag not in (0, 1):
        raise FileFormatError(f"{path}:1: centered flag must be 0 or 1")
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != n:
        raise FileFormatError(
            f"{path}: header promises {n} rows, found {len(body)}"
        )
    values = np.empty((n, p))
    for k, ln in enumerate(body):
        parts = ln.split(",")
        if len(parts) != p:
            raise FileFormatError(
                f"{path}:{k + 2}: expected {p} values, found {len(parts)}"
            )
        for j, part in enumerate(parts):
            values[k, j] = _parse_float(part, path, k + 2, f"value {j + 1}")
    try:
        return DataMatrix(values, centered=bool(flag))
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc


def write_estimate(path, estimate: PrecisionEstimate, lam, iterations, delta):
    om = estimate.omega
    p = estimate.p
    with open(path, "w") as fh:
        fh.write(f"{p},{_fmt(lam)},{int(iterations)},{_fmt(delta)}\n")
        for i in range(p):
            for j in range(i, p):
                if i == j or om[i, j] != 0.0:
                    fh.write(f"{i + 1},{j + 1},{_fmt(om[i, j])}\n")


def read_estimate(path):
    """Returns (PrecisionEstimate, meta) with meta keys lam, iterations, delta."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise FileFormatError(f"{path}: empty file")
    head = lines[0].split(",")
    if len(head) != 4:
        raise FileFormatError(
            f"{path}:1: header must be 'p,lambda,iterations,delta'"
        )
    p = _parse_int(head[0], path, 1, "p")
    meta = {
        "lam": _parse_float(head[1], path, 1, "lambda"),
        "iterations": _parse_int(head[2], path, 1, "iterations"),
        "delta": _parse_float(head[3], path, 1, "delta"),
    }
    om = np.zeros((p, p))
    seen_diag = set()
    seen = set()
    for k, ln in enumerate(lines[1:]):
        if not ln.strip():
            continue
        parts = ln.split(",")
        if len(parts) != 3:
            raise FileFormatError(f"{path}:{k + 2}: expected 'i,j,value'")
        i = _parse_int(parts[0], path, k + 2, "i")
        j = _parse_int(parts[1], path, k + 2, "j")
        v = _parse_float(parts[2], path, k + 2, "value")
        if not (1 <= i <= j <= p):
            raise FileFormatError(
                f"{path}:{k + 2}: indices ({i}, {j}) out of range for p={p}"
            )
        if (i, j) in seen:
            raise FileFormatError(f"{path}:{k + 2}: duplicate entry ({i}, {j})")
        seen.add((i, j))
        om[i - 1, j - 1] = v
        om[j - 1, i - 1] = v
        if i == j:
            seen_diag.add(i)
    if len(seen_diag) != p:
        missing = sorted(set(range(1, p + 1)) - seen_diag)[0]
        raise FileFormatError(f"{path}: diagonal entry {missing} is missing")
    try:
        return PrecisionEstimate(om), meta
    except ValueError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
