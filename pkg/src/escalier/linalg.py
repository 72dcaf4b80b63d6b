"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from math import lcm
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .algebra import Q


def _integer_rows(rows: Sequence[Sequence]) -> List[List[int]]:
    out = []
    for row in rows:
        row = [Q(x) for x in row]
        m = lcm(*(int(x.denominator) for x in row)) if row else 1
        out.append([int(x * m) for x in row])
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""
    M = _integer_rows(rows)
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    r, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        for i in range(r + 1, nrows):
            a = M[i][col]
            M[i] = [(p * M[i][k] - a * M[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def columns(rows: Sequence[Sequence], idx: Sequence[int]) -> List[List]:
    return [[row[j] for j in idx] for row in rows]


def rref(rows: Sequence[Sequence], column_order: Optional[Sequence[int]] = None) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form, choosing pivots in ``column_order``.

    Returns the nonzero rows (each with pivot entry 1) and their pivot columns.
    """
    M = [[Q(x) for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    order = list(column_order) if column_order is not None else list(range(ncols))
    pivots: List[int] = []
    r = 0
    for col in order:
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                a = M[i][col]
                M[i] = [x - a * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List]:
    """Basis of ``{x : rows @ x = 0}``."""
    R, pivots = rref(rows) if rows else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def affine_root(u0: Sequence, u1: Sequence, span: Sequence[Sequence]) -> Tuple[str, Optional[object]]:
    """Solve ``u0 + t*u1 in span(span)`` for t.

    Returns ("all", None), ("none", None) or ("one", t).
    """
    dim = len(u0)
    # left null space of the span: functionals vanishing on every spanning vector
    W = nullspace([list(v) for v in span], dim) if span else [
        [mpq(1) if k == i else mpq(0) for k in range(dim)] for i in range(dim)]
    a = [sum(w[k] * Q(u0[k]) for k in range(dim)) for w in W]
    b = [sum(w[k] * Q(u1[k]) for k in range(dim)) for w in W]
    if all(x == 0 for x in b):
        return ("all", None) if all(x == 0 for x in a) else ("none", None)
    i = next(k for k, x in enumerate(b) if x)
    t = -a[i] / b[i]
    if all(x + t * y == 0 for x, y in zip(a, b)):
        return "one", t
    return "none", None
