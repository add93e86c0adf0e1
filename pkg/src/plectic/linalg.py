"""Exact linear algebra over Q and Z for small dense systems."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0


def solve_square(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    """``a^{-1} b`` for a square invertible ``a``."""
    n = len(a)
    aug = [list(map(Fraction, a[i])) + list(map(Fraction, b[i])) for i in range(n)]
    reduced, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in reduced]


def hermite_lower(mat: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite form: returns ``(H, U)`` with ``mat . U = H``,
    ``U`` unimodular and ``H`` lower triangular with positive diagonal and
    ``0 <= H[i][j] < H[i][i]`` for ``j < i``.  ``mat`` must be square and
    non-singular."""
    n = len(mat)
    h = [list(map(int, row)) for row in mat]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(target: int, source: int, k: int) -> None:
        # column target -= k * column source
        for row in h:
            row[target] -= k * row[source]
        for row in u:
            row[target] -= k * row[source]

    def swap(c1: int, c2: int) -> None:
        for row in h:
            row[c1], row[c2] = row[c2], row[c1]
        for row in u:
            row[c1], row[c2] = row[c2], row[c1]

    def negate(c: int) -> None:
        for row in h:
            row[c] = -row[c]
        for row in u:
            row[c] = -row[c]

    for i in range(n):
        # gcd-eliminate entries to the right of the diagonal in row i
        while True:
            nz = [j for j in range(i, n) if h[i][j] != 0]
            if not nz:
                raise ZeroDivisionError("singular matrix")
            j0 = min(nz, key=lambda j: abs(h[i][j]))
            if j0 != i:
                swap(i, j0)
            done = True
            for j in range(i + 1, n):
                if h[i][j]:
                    col_op(j, i, h[i][j] // h[i][i])
                    if h[i][j]:
                        done = False
            if done:
                break
        if h[i][i] < 0:
            negate(i)
        for j in range(i):
            col_op(j, i, h[i][j] // h[i][i])
    return h, u


def det_int(mat: Sequence[Sequence[int]]) -> Fraction:
    n = len(mat)
    m = [list(map(Fraction, row)) for row in mat]
    d = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d
