"""Exact integer matrix normal forms (Smith, Hermite) and lattice queries.

Matrices are plain lists of rows of Python ints, so there is no overflow
ceiling.  Inputs are never mutated; every function returns fresh lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

Matrix = list[list[int]]

__all__ = [
    "SnfDecomposition",
    "identity",
    "matmul",
    "transpose",
    "determinant",
    "snf",
    "hnf",
    "lattice_membership",
    "solve_integer",
]


def _copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [[int(x) for x in row] for row in m]


def _shape(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[int, int]:
    rows = len(m)
    if rows == 0:
        return 0, cols or 0
    ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    return rows, ncols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], cols: int = 0) -> Matrix:
    rows, ncols = _shape(m, cols)
    return [[m[i][j] for i in range(rows)] for j in range(ncols)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    ra, ca = _shape(a)
    rb, cb = _shape(b)
    if ra and rb and ca != rb:
        raise ValueError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    if rb == 0:
        cb = 0
    return [[sum(a[i][t] * b[t][j] for t in range(ca)) for j in range(cb)] for i in range(ra)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n, nc = _shape(m)
    if n != nc:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = _copy(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ m @ v == s`` with ``s`` diagonal, d1 | d2 | ... and zeros last.

    ``v_inv`` is carried along because quotient maps need preimages of the
    new generators, which are the rows of ``v_inv``.
    """

    u: Matrix
    s: Matrix
    v: Matrix
    v_inv: Matrix
    invariant_factors: list[int]

    @property
    def diagonal(self) -> list[int]:
        rows = len(self.s)
        cols = len(self.v)
        return [self.s[i][i] for i in range(min(rows, cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    ``cols`` gives the column count when ``m`` has no rows.  Pivots are
    chosen as the smallest nonzero magnitude in the trailing block, ties
    broken in row-major order, so the output is deterministic.
    """
    rows, ncols = _shape(m, cols)
    a = _copy(m)
    u = identity(rows)
    v = identity(ncols)
    v_inv = identity(ncols)

    def row_add(dst: int, src: int, c: int) -> None:
        # row_dst += c * row_src, mirrored on u
        if c:
            ra, rs = a[dst], a[src]
            for j in range(ncols):
                ra[j] += c * rs[j]
            ua, us = u[dst], u[src]
            for j in range(rows):
                ua[j] += c * us[j]

    def col_add(dst: int, src: int, c: int) -> None:
        # col_dst += c * col_src; v_inv gets the inverse row operation
        if c:
            for row in a:
                row[dst] += c * row[src]
            for row in v:
                row[dst] += c * row[src]
            ri, rd = v_inv[src], v_inv[dst]
            for j in range(ncols):
                ri[j] -= c * rd[j]

    def row_swap(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    for t in range(min(rows, ncols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, ncols):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            row_swap(t, pivot[0])
            col_swap(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                row_add(i, t, -q)
                dirty = dirty or a[i][t] != 0
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                col_add(j, t, -q)
                dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, ncols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    factors = [a[i][i] for i in range(min(rows, ncols)) if a[i][i] != 0]
    return SnfDecomposition(u=u, s=a, v=v, v_inv=v_inv, invariant_factors=factors)


def hnf(m: Sequence[Sequence[int]], cols: Optional[int] = None) -> Matrix:
    """Row-style Hermite normal form.

    The nonzero rows form an echelon basis of the row lattice with positive
    pivots and entries above each pivot reduced into ``[0, pivot)``; zero
    rows are kept at the bottom so the shape is unchanged.
    """
    rows, ncols = _shape(m, cols)
    a = _copy(m)
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if a[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[best] = a[best], a[r]
            p = a[r][c]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    done = done and a[i][c] == 0
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return a


def lattice_membership(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """True iff ``vec`` is an integer combination of the rows of ``basis``."""
    n = len(vec)
    if basis and len(basis[0]) != n:
        raise ValueError(f"vector of length {n} against basis with {len(basis[0])} columns")
    h = hnf(basis, cols=n)
    rest = [int(x) for x in vec]
    for row in h:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            break
        if rest[lead] % row[lead]:
            return False
        q = rest[lead] // row[lead]
        rest = [x - q * y for x, y in zip(rest, row)]
    return not any(rest)


def solve_integer(m: Sequence[Sequence[int]], b: Sequence[int], cols: Optional[int] = None) -> Optional[list[int]]:
    """Some integer ``x`` with ``m @ x == b``, or None when none exists."""
    rows, ncols = _shape(m, cols)
    if len(b) != rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {rows}")
    dec = snf(m, cols=ncols)
    ub = [sum(dec.u[i][j] * b[j] for j in range(rows)) for i in range(rows)]
    y = [0] * ncols
    for i in range(rows):
        d = dec.s[i][i] if i < ncols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        elif ub[i] % d:
            return None
        else:
            y[i] = ub[i] // d
    return [sum(dec.v[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
