"""Exact linear algebra over F2: bit-packed matrices, subspaces, quotients.

Every other module reduces its questions to ranks, kernels, spans and
induced maps computed here.  No floating point: entries are bits packed
into uint64 words, arithmetic is xor.

Conventions.  Vectors are ROW vectors; a linear map f: F2^m -> F2^n is an
m x n matrix acting by v |-> v @ f.  A Subspace stores its basis as the
reduced row echelon form of the generating rows, which is a canonical
form: two subspaces are equal iff their stored bases are bit-identical.
(The column-echelon view required by downstream consumers is exposed as
``Subspace.basis``, the transpose of the stored rows.)
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

if os.environ.get("PATCHLAB_PURE"):
    from . import _f2pure as _kernel

    COMPILED = False
else:
    try:
        from . import _f2core as _kernel  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        from . import _f2pure as _kernel  # type: ignore[no-redef]

        COMPILED = False

_ONE = np.uint64(1)


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) >> 6)


class F2Matrix:
    """Immutable-by-convention bit-packed matrix over F2."""

    __slots__ = ("data", "nrows", "ncols")

    def __init__(self, data: np.ndarray, ncols: int):
        if data.dtype != np.uint64 or data.ndim != 2:
            raise ValueError("data must be a 2-d uint64 array")
        self.data = np.ascontiguousarray(data)
        self.nrows = data.shape[0]
        self.ncols = ncols

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(np.zeros((nrows, _nwords(ncols)), dtype=np.uint64), ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.set(i, i, 1)
        return m

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        arr = np.array(rows, dtype=np.uint8).reshape(len(rows), ncols)
        return cls.from_bool(arr % 2, ncols)

    @classmethod
    def from_bool(cls, arr: np.ndarray, ncols: int | None = None) -> "F2Matrix":
        """Pack a 2-d 0/1 array (row-major, bit j = column j)."""
        if ncols is None:
            ncols = arr.shape[1]
        nrows = arr.shape[0]
        packed = np.packbits(arr.astype(np.uint8), axis=1, bitorder="little")
        want = _nwords(ncols) * 8
        if packed.shape[1] < want:
            pad = np.zeros((nrows, want - packed.shape[1]), dtype=np.uint8)
            packed = np.concatenate([packed, pad], axis=1)
        return cls(packed.view(np.uint64), ncols)

    @classmethod
    def from_ints(cls, ints: Sequence[int], ncols: int) -> "F2Matrix":
        nw = _nwords(ncols)
        out = np.zeros((len(ints), nw), dtype=np.uint64)
        for i, v in enumerate(ints):
            out[i] = np.frombuffer(int(v).to_bytes(nw * 8, "little"), dtype=np.uint64)
        return cls(out, ncols)

    @classmethod
    def stack(cls, mats: Iterable["F2Matrix"]) -> "F2Matrix":
        mats = list(mats)
        if not mats:
            raise ValueError("cannot stack nothing")
        ncols = mats[0].ncols
        if any(m.ncols != ncols for m in mats):
            raise ValueError("column count mismatch")
        return cls(np.concatenate([m.data for m in mats], axis=0), ncols)

    @classmethod
    def hstack(cls, mats: Iterable["F2Matrix"]) -> "F2Matrix":
        mats = list(mats)
        nrows = mats[0].nrows
        if any(m.nrows != nrows for m in mats):
            raise ValueError("row count mismatch")
        out = cls.zeros(nrows, sum(m.ncols for m in mats))
        off = 0
        for m in mats:
            _paste_cols(out, m, off)
            off += m.ncols
        return out

    # -- views --------------------------------------------------------

    def to_bool(self) -> np.ndarray:
        if self.nrows == 0:
            return np.zeros((0, self.ncols), dtype=np.uint8)
        bits = np.unpackbits(self.data.view(np.uint8), axis=1,
                             count=self.ncols, bitorder="little")
        return bits

    def to_lists(self) -> list[list[int]]:
        return self.to_bool().astype(int).tolist()

    def row_int(self, i: int) -> int:
        return int.from_bytes(self.data[i].tobytes(), "little")

    def row_ints(self) -> list[int]:
        return [self.row_int(i) for i in range(self.nrows)]

    def tobytes(self) -> bytes:
        return self.data.tobytes()

    def get(self, i: int, j: int) -> int:
        if not (0 <= j < self.ncols):
            raise IndexError("column out of range")
        return int((self.data[i, j >> 6] >> np.uint64(j & 63)) & _ONE)

    def set(self, i: int, j: int, v: int) -> None:
        if not (0 <= j < self.ncols):
            raise IndexError("column out of range")
        bit = _ONE << np.uint64(j & 63)
        if v & 1:
            self.data[i, j >> 6] |= bit
        else:
            self.data[i, j >> 6] &= ~bit

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.data.copy(), self.ncols)

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return (self.nrows == other.nrows and self.ncols == other.ncols
                and bool(np.array_equal(self.data, other.data)))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"

    # -- row/column selection -----------------------------------------

    def take_rows(self, idx: Sequence[int] | np.ndarray) -> "F2Matrix":
        return F2Matrix(self.data[np.asarray(idx, dtype=np.intp)], self.ncols)

    def rows_prefix(self, k: int) -> "F2Matrix":
        return F2Matrix(self.data[:k], self.ncols)

    def cols_from(self, a: int) -> "F2Matrix":
        """Drop the first a columns (used for filtration-prefix projections)."""
        if a == 0:
            return self
        ncols = self.ncols - a
        if ncols <= 0:
            return F2Matrix.zeros(self.nrows, 0)
        w, b = a >> 6, a & 63
        src = self.data[:, w:]
        if b == 0:
            out = src[:, : _nwords(ncols)].copy()
        else:
            shifted = src >> np.uint64(b)
            carry = np.zeros_like(src)
            carry[:, :-1] = src[:, 1:] << np.uint64(64 - b)
            out = (shifted | carry)[:, : _nwords(ncols)]
        m = F2Matrix(np.ascontiguousarray(out), ncols)
        _mask_tail(m)
        return m

    def cols_range(self, a: int, b: int) -> "F2Matrix":
        out = self.cols_from(a)
        width = b - a
        if width < out.ncols:
            m = F2Matrix(out.data[:, : _nwords(width)].copy(), width)
            _mask_tail(m)
            return m
        return out

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.data ^ other.data, self.ncols)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in product")
        out = F2Matrix.zeros(self.nrows, other.ncols)
        if self.nrows and other.nrows:
            # expand the selector in bounded row blocks to keep the
            # byte-per-bit temporary small on large matrices
            chunk = max(1, _CHUNK_BYTES // max(1, self.ncols))
            for i0 in range(0, self.nrows, chunk):
                blk = F2Matrix(self.data[i0:i0 + chunk], self.ncols)
                select = np.ascontiguousarray(blk.to_bool())
                _kernel.xor_selected(out.data[i0:i0 + chunk],
                                     other.data, select)
        return out

    def transpose(self) -> "F2Matrix":
        nr, nc = self.nrows, self.ncols
        out = F2Matrix.zeros(nc, nr)
        if nr == 0 or nc == 0:
            return out
        # word-aligned row blocks so each transposed block pastes on a
        # word boundary
        chunk = max(64, (_CHUNK_BYTES // max(1, nc)) & ~63)
        for i0 in range(0, nr, chunk):
            blk = F2Matrix(self.data[i0:i0 + chunk], nc)
            piece = F2Matrix.from_bool(
                np.ascontiguousarray(blk.to_bool().T))
            _paste_cols(out, piece, i0)
        return out

    # -- elimination --------------------------------------------------

    def rref(self) -> tuple["F2Matrix", list[int]]:
        """Reduced row echelon form with zero rows dropped."""
        work = self.data.copy()
        pivots = _kernel.rref_inplace(work, self.ncols)
        r = len(pivots)
        return F2Matrix(work[:r], self.ncols), pivots

    def rank(self) -> int:
        work = self.data.copy()
        return len(_kernel.rref_inplace(work, self.ncols))

    def echelon_with_transform(self) -> tuple["F2Matrix", "F2Matrix", list[int]]:
        """Return (R, T, pivots) with R = rref(self) (zero rows kept) and
        T invertible such that T @ self = R."""
        n = self.ncols
        aug = F2Matrix.hstack([self, F2Matrix.identity(self.nrows)])
        pivots = _kernel.rref_inplace(aug.data, n)
        R = aug.cols_range(0, n)
        T = aug.cols_from(n)
        return R, T, pivots

    def left_kernel(self) -> "F2Matrix":
        """Canonical basis (rref rows) of {x : x @ self = 0}."""
        R, T, pivots = self.echelon_with_transform()
        ker = T.data[len(pivots):]
        kmat = F2Matrix(ker.copy(), self.nrows)
        out, _ = kmat.rref()
        return out

    def solve_left(self, rhs: "F2Matrix") -> "F2Matrix | None":
        """Solve X @ self = rhs row-wise; None if any row is unsolvable."""
        if rhs.ncols != self.ncols:
            raise ValueError("shape mismatch in solve")
        R, T, pivots = self.echelon_with_transform()
        residual = rhs.data.copy()
        coef = F2Matrix.zeros(rhs.nrows, self.nrows)
        for t, c in enumerate(pivots):
            w, b = c >> 6, np.uint64(c & 63)
            hit = np.nonzero((residual[:, w] >> b) & _ONE)[0]
            if hit.size:
                residual[hit] ^= R.data[t]
                cw, cb = t >> 6, np.uint64(t & 63)
                coef.data[hit, cw] |= _ONE << cb
        if residual.any():
            return None
        return coef @ T


def _mask_tail(m: F2Matrix) -> None:
    """Zero the padding bits beyond ncols in the last word."""
    extra = m.ncols & 63
    if extra and m.data.shape[1] * 64 > m.ncols:
        last = (m.ncols - 1) >> 6
        mask = np.uint64((1 << extra) - 1)
        m.data[:, last] &= mask
        if last + 1 < m.data.shape[1]:
            m.data[:, last + 1:] = 0


_CHUNK_BYTES = 1 << 25          # byte-per-bit temporaries stay under 32 MB


def _paste_cols(dst: F2Matrix, src: F2Matrix, at: int) -> None:
    """OR the columns of src into dst starting at column `at`; the
    target bits must currently be zero."""
    if src.ncols == 0 or src.nrows == 0:
        return
    d = src.data
    extra = src.ncols & 63
    if extra:
        d = d.copy()
        d[:, (src.ncols - 1) >> 6] &= np.uint64((1 << extra) - 1)
    w, b = at >> 6, at & 63
    nw = d.shape[1]
    if b == 0:
        dst.data[:, w:w + nw] |= d
    else:
        dst.data[:, w:w + nw] |= d << np.uint64(b)
        hi = d >> np.uint64(64 - b)
        room = dst.data.shape[1] - (w + 1)
        dst.data[:, w + 1:w + 1 + nw] |= hi[:, :room]


def vec(bits: Sequence[int]) -> F2Matrix:
    """A single row vector."""
    return F2Matrix.from_lists([list(bits)])


class Subspace:
    """A subspace of F2^n in canonical (reduced row echelon) basis."""

    __slots__ = ("mat", "pivots")

    def __init__(self, mat: F2Matrix, pivots: list[int]):
        self.mat = mat
        self.pivots = pivots

    @classmethod
    def span(cls, generators: F2Matrix) -> "Subspace":
        R, piv = generators.rref()
        return cls(R, piv)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(F2Matrix.zeros(0, ambient), [])

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(F2Matrix.identity(ambient), list(range(ambient)))

    @property
    def ambient(self) -> int:
        return self.mat.ncols

    @property
    def dim(self) -> int:
        return self.mat.nrows

    @property
    def basis(self) -> F2Matrix:
        """Basis in column-echelon form (vectors as columns)."""
        return self.mat.transpose()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.mat == other.mat

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of F2^{self.ambient})"

    def reduce_rows(self, b: F2Matrix) -> F2Matrix:
        """Residual of each row of b after reduction by the basis."""
        residual = b.data.copy()
        for t, c in enumerate(self.pivots):
            w, bitpos = c >> 6, np.uint64(c & 63)
            hit = np.nonzero((residual[:, w] >> bitpos) & _ONE)[0]
            if hit.size:
                residual[hit] ^= self.mat.data[t]
        return F2Matrix(residual, self.ambient)

    def contains_matrix(self, b: F2Matrix) -> bool:
        return self.reduce_rows(b).is_zero()

    def contains(self, other: "Subspace") -> bool:
        return self.contains_matrix(other.mat)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def sum_with(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace.span(F2Matrix.stack([self.mat, other.mat]))

    def intersect(self, other: "Subspace") -> "Subspace":
        return sum_and_intersection(self, other)[1]

    def annihilator(self) -> "Subspace":
        """{f : <f, v> = 0 for all v here}, rows as dual coordinates."""
        ker = self.mat.transpose().left_kernel()
        return Subspace(ker, ker.rref()[1])


def _check_ambient(u: Subspace, w: Subspace) -> None:
    if u.ambient != w.ambient:
        raise ValueError("ambient dimension mismatch")


def canonicalize(generators: F2Matrix) -> Subspace:
    return Subspace.span(generators)


def sum_and_intersection(u: Subspace, w: Subspace) -> tuple[Subspace, Subspace]:
    """Zassenhaus: one echelonization yields both U+W and U int W."""
    _check_ambient(u, w)
    n = u.ambient
    top = F2Matrix.hstack([u.mat, u.mat])
    bot = F2Matrix.hstack([w.mat, F2Matrix.zeros(w.dim, n)])
    R, piv = F2Matrix.stack([top, bot]).rref()
    sum_rows, int_rows = [], []
    for t, c in enumerate(piv):
        if c < n:
            sum_rows.append(t)
        else:
            int_rows.append(t)
    s = Subspace.span(R.take_rows(sum_rows).cols_range(0, n))
    i = Subspace.span(R.take_rows(int_rows).cols_from(n))
    return s, i


class Quotient:
    """A subquotient num/den with a pivot-chosen coset basis."""

    __slots__ = ("num", "den", "reps", "_den_set")

    def __init__(self, num: Subspace, den: Subspace):
        if not num.contains(den):
            raise ValueError("denominator not contained in numerator")
        self.num = num
        self.den = den
        den_piv = set(den.pivots)
        keep = [t for t, c in enumerate(num.pivots) if c not in den_piv]
        self.reps = num.mat.take_rows(keep)
        self._den_set = den_piv

    @property
    def dim(self) -> int:
        return self.reps.nrows

    def coords(self, b: F2Matrix) -> F2Matrix:
        """Coset coordinates of rows of b (must lie in num)."""
        residual = self.den.reduce_rows(b)
        coef = F2Matrix.zeros(b.nrows, self.dim)
        res = residual.data
        rep_pivots = [c for c in self.num.pivots if c not in self._den_set]
        for t, c in enumerate(rep_pivots):
            w, bitpos = c >> 6, np.uint64(c & 63)
            hit = np.nonzero((res[:, w] >> bitpos) & _ONE)[0]
            if hit.size:
                res[hit] ^= self.reps.data[t]
                cw, cb = t >> 6, np.uint64(t & 63)
                coef.data[hit, cw] |= _ONE << cb
        if res.any():
            raise ValueError("vector not in the numerator subspace")
        return coef

    def lift(self, coefs: F2Matrix) -> F2Matrix:
        """Representative chains of coset-coordinate rows."""
        return coefs @ self.reps


def induced_map_on_subquotient(f: F2Matrix, src_num: Subspace, src_den: Subspace,
                               dst_num: Subspace, dst_den: Subspace) -> F2Matrix:
    """Matrix of the induced map (src_num/src_den) -> (dst_num/dst_den)."""
    if not src_num.contains(src_den):
        raise ValueError("src_den not inside src_num")
    if not dst_num.contains(dst_den):
        raise ValueError("dst_den not inside dst_num")
    if not dst_num.contains_matrix(src_num.mat @ f):
        raise ValueError("f does not map src_num into dst_num")
    if not dst_den.contains_matrix(src_den.mat @ f):
        raise ValueError("f does not map src_den into dst_den")
    src_q = Quotient(src_num, src_den)
    dst_q = Quotient(dst_num, dst_den)
    return dst_q.coords(src_q.reps @ f)
