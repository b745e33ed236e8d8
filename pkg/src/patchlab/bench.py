"""Benchmark of the compiled GF(2) elimination kernel against the
pure-Python fallback.

Runs the two low-level kernels (row reduction and selected-row xor, the
workhorses behind every rank, kernel and product) on identical random
bit matrices and reports wall times and speedups.  Invoke with
``python -m patchlab.bench``.
"""

from __future__ import annotations

import time

import numpy as np

from . import _f2pure
from .f2_linalg import COMPILED

try:
    from . import _f2core
except ImportError:                       # pragma: no cover
    _f2core = None


def _random_words(rng, nrows: int, ncols: int) -> np.ndarray:
    nwords = max(1, (ncols + 63) >> 6)
    data = rng.integers(0, 2 ** 63, size=(nrows, nwords), dtype=np.uint64)
    tail = ncols & 63
    if tail:
        data[:, -1] &= np.uint64((1 << tail) - 1)
    return data


def _time(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(sizes=(128, 256, 512, 1024), reps: int = 3, seed: int = 0) -> list[dict]:
    """Benchmark rref and xor_selected on square random matrices."""
    results = []
    for n in sizes:
        rng = np.random.default_rng(seed)
        base = _random_words(rng, n, n)
        sel = (rng.integers(0, 2, size=(n, n)) != 0)
        row: dict = {"size": n}
        for label, mod in (("pure", _f2pure),
                           ("compiled", _f2core)):
            if mod is None:
                continue
            row[f"rref_{label}"] = _time(
                lambda m=mod: m.rref_inplace(base.copy(), n), reps)
            acc = np.zeros_like(base)
            row[f"xor_{label}"] = _time(
                lambda m=mod: m.xor_selected(acc, base, sel), reps)
        if _f2core is not None:
            row["rref_speedup"] = row["rref_pure"] / row["rref_compiled"]
            row["xor_speedup"] = row["xor_pure"] / row["xor_compiled"]
        results.append(row)
    return results


def main() -> int:
    print(f"active backend: {'compiled' if COMPILED else 'pure'}")
    for row in run():
        parts = [f"n={row['size']:5d}"]
        for key in ("rref_pure", "rref_compiled", "xor_pure", "xor_compiled"):
            if key in row:
                parts.append(f"{key}={row[key] * 1e3:8.2f}ms")
        for key in ("rref_speedup", "xor_speedup"):
            if key in row:
                parts.append(f"{key}={row[key]:6.1f}x")
        print("  ".join(parts))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
