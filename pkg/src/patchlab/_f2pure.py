"""Pure-Python (vectorized numpy) fallbacks for the GF(2) elimination kernels.

Same contracts as the compiled module _f2core; selected at import time by
f2_linalg when the extension is unavailable or PATCHLAB_PURE is set.
"""

from __future__ import annotations

import numpy as np

_ONE = np.uint64(1)


def rref_inplace(data: np.ndarray, ncols: int) -> list[int]:
    """Reduce to reduced row echelon form in place; return pivot column list."""
    nrows = data.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        w = c >> 6
        b = np.uint64(c & 63)
        col = (data[r:, w] >> b) & _ONE
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
        mask = (data[:, w] >> b) & _ONE
        mask[r] = 0
        rows = np.nonzero(mask)[0]
        if rows.size:
            data[rows] ^= data[r]
        pivots.append(c)
        r += 1
    return pivots


def xor_selected(acc: np.ndarray, rows: np.ndarray, select: np.ndarray) -> None:
    """acc[i] ^= XOR of rows[j] over j with select[i, j] set (GF(2) matmul core)."""
    for j in range(select.shape[1]):
        hit = np.nonzero(select[:, j])[0]
        if hit.size:
            acc[hit] ^= rows[j]
