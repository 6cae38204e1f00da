"""Exact linear algebra over Q.

Rows are scaled to primitive integer vectors and eliminated fraction-free
(``row_r <- p*row_r - a*row_p`` followed by division by the row gcd), then
normalized to the unique reduced row echelon form with Fraction entries.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list  # list of rows


def _primitive(row: list) -> list:
    """Integer row proportional to ``row`` (Fractions/ints), gcd 1, or all zero."""
    den = 1
    for v in row:
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in row]
    g = 0
    for v in ints:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    return [v // g for v in ints] if g > 1 else ints


def rref(rows: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form and pivot columns.  Zero rows are dropped."""
    work = [_primitive(list(r)) for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        p = prow[col]
        for i in range(len(work)):
            if i == rank:
                continue
            a = work[i][col]
            if a:
                row = work[i]
                new = [p * x - a * y for x, y in zip(row, prow)]
                g = 0
                for v in new:
                    if v:
                        g = math.gcd(g, v)
                        if g == 1:
                            break
                work[i] = [v // g for v in new] if g > 1 else new
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    out = []
    for i, col in enumerate(pivots):
        p = work[i][col]
        out.append([Fraction(v, p) for v in work[i]])
    return out, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of {x : A x = 0}, returned in reduced row echelon form."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return rref(basis)[0] if basis else []


def solve(A: Sequence[Sequence], b: Sequence) -> list:
    """Unique solution of the square non-singular system A x = b."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not basis:
        return not any(v)
    return rank(list(basis) + [list(v)]) == rank(basis)


def intersect(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    """Basis (RREF) of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    n = len(a[0])
    # x in both <=> x = sum u_i a_i = sum w_j b_j ; solve [a^T | -b^T] (u, w) = 0
    cols = [list(r) for r in a] + [[-x for x in r] for r in b]
    system = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    coeffs = nullspace(system, len(cols))
    vecs = []
    for c in coeffs:
        vecs.append([sum(c[i] * a[i][k] for i in range(len(a))) for k in range(n)])
    return rref(vecs)[0] if vecs else []
