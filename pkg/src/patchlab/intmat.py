"""Small exact integer matrix helpers: Smith reduction, lattice saturation.

Inputs are lists of int rows; everything is plain Python integers, so there
is no overflow and no floating point.
"""

from __future__ import annotations

from math import gcd


def primitive_vector(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return list(v)
    return [x // g for x in v]


def _smith_reduce(m: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Diagonalize m by unimodular row/column operations.

    Returns (s, w) where s is the diagonalized matrix and w tracks the
    inverse of the accumulated column operations: if V is the product of
    the column operations (m_final = U m V), then w = V^{-1}.
    """
    if not m:
        return [], []
    a = [row[:] for row in m]
    k, n = len(a), len(a[0])
    w = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_add(i: int, j: int, c: int) -> None:
        # column j += c * column i; track w = V^{-1}
        for r in range(k):
            a[r][j] += c * a[r][i]
        for t in range(n):
            w[i][t] -= c * w[j][t]

    def col_swap(i: int, j: int) -> None:
        for r in range(k):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        w[i], w[j] = w[j], w[i]

    def row_add(i: int, j: int, c: int) -> None:
        for t in range(n):
            a[j][t] += c * a[i][t]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]

    t = 0
    while t < min(k, n):
        # find a nonzero pivot in the remaining block
        pr = pc = -1
        best = None
        for r in range(t, k):
            for c in range(t, n):
                if a[r][c] != 0 and (best is None or abs(a[r][c]) < best):
                    best, pr, pc = abs(a[r][c]), r, c
        if best is None:
            break
        row_swap(t, pr)
        col_swap(t, pc)
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for r in range(t + 1, k):
                if a[r][t] % a[t][t] != 0:
                    q = a[r][t] // a[t][t]
                    row_add(t, r, -q)
                    row_swap(t, r)
                    dirty = True
                elif a[r][t] != 0:
                    row_add(t, r, -(a[r][t] // a[t][t]))
            for c in range(t + 1, n):
                if a[t][c] % a[t][t] != 0:
                    q = a[t][c] // a[t][t]
                    col_add(t, c, -q)
                    col_swap(t, c)
                    dirty = True
                elif a[t][c] != 0:
                    col_add(t, c, -(a[t][c] // a[t][t]))
        t += 1
    return a, w


def rank(m: list[list[int]]) -> int:
    s, _ = _smith_reduce(m)
    return sum(1 for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i] != 0)


def saturation_basis(m: list[list[int]]) -> list[list[int]]:
    """Z-basis of the saturation of the row lattice of m.

    With U m V = s diagonal, the row lattice is spanned by s_ii times the
    rows of V^{-1}; the saturation drops the multipliers.
    """
    s, w = _smith_reduce(m)
    if not s:
        return []
    r = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i] != 0)
    return [w[i][:] for i in range(r)]
