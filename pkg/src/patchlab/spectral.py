"""Spectral sequences of finite filtered chain complexes over F2.

The engine works homologically with a decreasing filtration F_0 = C
down to F_{L+1} = 0 and boundary of bidegree (+r, -1) on page r.  The
complex is internally rewritten in a filtration-adapted basis per degree
(deepest filtration level first), so that every F_p is a coordinate
prefix and each Z^r_{p,q} = F_p intersect boundary-preimage of F_{p+r}
is the kernel of a single submatrix.  Cohomological spectral sequences
are obtained by index reflection, dual ones by annihilator filtrations
on the transposed complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .f2_linalg import (F2Matrix, Quotient, Subspace,
                        induced_map_on_subquotient)


class FilteredComplexF2:
    """A bounded chain complex with a decreasing filtration.

    boundaries[q] maps C_q -> C_{q-1} on row vectors; filtration[q] is
    the decreasing list [F_0, ..., F_L] of Subspaces of C_q with
    F_0 = C_q (F_{L+1} = 0 is implicit).
    """

    def __init__(self, dims: dict[int, int], boundaries: dict[int, F2Matrix],
                 filtration: dict[int, list[Subspace]],
                 validate: bool = True):
        self.dims = dict(dims)
        self.degrees = sorted(self.dims)
        self.boundaries = dict(boundaries)
        self.filtration = {q: list(f) for q, f in filtration.items()}
        lengths = {len(f) for f in self.filtration.values()}
        if len(lengths) != 1:
            raise ValueError("filtration length differs across degrees")
        self.length = lengths.pop() - 1          # L: F_0 .. F_L
        if validate:
            self._validate()
        self._adapt()

    # -- validation ---------------------------------------------------

    def boundary(self, q: int) -> F2Matrix:
        m = self.boundaries.get(q)
        if m is None:
            return F2Matrix.zeros(self.dims.get(q, 0), self.dims.get(q - 1, 0))
        return m

    def _validate(self) -> None:
        for q in self.degrees:
            filt = self.filtration[q]
            if filt[0].dim != self.dims[q]:
                raise ValueError("F_0 must be the whole chain group")
            for p in range(self.length):
                if not filt[p + 1] <= filt[p]:
                    raise ValueError("filtration is not decreasing")
            d = self.boundary(q)
            if q - 1 in self.dims:
                dd = d @ self.boundary(q - 1)
                if not dd.is_zero():
                    raise ValueError("boundary does not square to zero")
                for p in range(self.length + 1):
                    img = filt[p].mat @ d
                    if not self.filtration[q - 1][p].contains_matrix(img):
                        raise ValueError(
                            f"boundary drops out of F_{p} at degree {q}")
            elif not d.is_zero() and d.ncols:
                raise ValueError("boundary leaves the complex")

    # -- adapted coordinates ------------------------------------------

    def _adapt(self) -> None:
        self._basis: dict[int, F2Matrix] = {}
        self._basis_inv: dict[int, F2Matrix] = {}
        self._fdims: dict[int, list[int]] = {}
        for q in self.degrees:
            filt = self.filtration[q]
            chosen: list[int] = []
            span = Subspace.zero(self.dims[q])
            for p in range(self.length, -1, -1):
                res = Subspace.span(span.reduce_rows(filt[p].mat))
                if res.dim:
                    # residuals stay inside F_p: deeper levels are contained
                    chosen.extend(res.mat.row_ints())
                    span = span.sum_with(res)
            b = F2Matrix.from_ints(chosen, self.dims[q])
            r, t, piv = b.echelon_with_transform()
            if len(piv) != self.dims[q]:
                raise ValueError("adapted basis is singular")
            self._basis[q] = b
            self._basis_inv[q] = t
            self._fdims[q] = [filt[p].dim for p in range(self.length + 1)] + [0]
        self._dmat: dict[int, F2Matrix] = {}
        for q in self.degrees:
            if q - 1 in self.dims:
                self._dmat[q] = (self._basis[q] @ self.boundary(q)
                                 @ self._basis_inv[q - 1])
            else:
                self._dmat[q] = F2Matrix.zeros(self.dims[q], 0)

    def fdim(self, p: int, q: int) -> int:
        if q not in self.dims:
            return 0
        p = max(0, min(p, self.length + 1))
        return self._fdims[q][p]

    def to_ambient(self, q: int, rows: F2Matrix) -> F2Matrix:
        return rows @ self._basis[q]


@dataclass
class Page:
    r: int
    dims: dict[tuple[int, int], int]
    differentials: dict[tuple[int, int], F2Matrix]
    representatives: dict[tuple[int, int], F2Matrix] = field(default_factory=dict)

    def rank(self, p: int, q: int) -> int:
        d = self.differentials.get((p, q))
        return d.rank() if d is not None else 0

    def total_rank(self) -> int:
        return sum(d.rank() for d in self.differentials.values())


class SpectralSequence:
    """All pages of the homological spectral sequence of a filtered
    complex, computed to the provable stabilization bound r = L + 2."""

    def __init__(self, C: FilteredComplexF2):
        self.C = C
        self._z: dict[tuple[int, int, int], Subspace] = {}
        self._e: dict[tuple[int, int, int], Quotient] = {}
        self._pages: dict[int, Page] = {}
        self.rmax = C.length + 2

    def page(self, r: int) -> Page:
        if r not in self._pages:
            self._pages[r] = self._page(r)
        return self._pages[r]

    @property
    def pages(self) -> list[Page]:
        return [self.page(r) for r in range(self.rmax + 1)]

    # Z^r_{p,q} = {x in F_p C_q : dx in F_{p+r} C_{q-1}}, with
    # Z^{-1}_{p,q} := F_p C_q.
    def z(self, r: int, p: int, q: int) -> Subspace:
        C = self.C
        if q not in C.dims:
            return Subspace.zero(0)
        if p > C.length:
            return Subspace.zero(C.dims[q])
        clamp = lambda i: max(0, min(i, C.length + 1))
        if r < 0:
            key = (-1, clamp(p), q)
        else:
            key = (clamp(p), clamp(p + r), q)
        if key in self._z:
            return self._z[key]
        fp = C.fdim(p, q)
        if r < 0:
            mat = F2Matrix.hstack([F2Matrix.identity(fp),
                                   F2Matrix.zeros(fp, C.dims[q] - fp)])
            sub = Subspace.span(mat)
        else:
            tgt = C.fdim(p + r, q - 1)
            d = C._dmat[q]
            block = d.rows_prefix(fp).cols_from(tgt)
            ker = block.left_kernel()
            mat = F2Matrix.hstack([ker, F2Matrix.zeros(ker.nrows,
                                                       C.dims[q] - fp)])
            sub = Subspace.span(mat)
        self._z[key] = sub
        return sub

    def e(self, r: int, p: int, q: int) -> Quotient:
        key = (r, p, q)
        if key in self._e:
            return self._e[key]
        C = self.C
        num = self.z(r, p, q)
        below = self.z(r - 1, p + 1, q)
        src = self.z(r - 1, p - r + 1, q + 1)
        if q + 1 in C.dims and src.dim:
            img = Subspace.span(src.mat @ C._dmat[q + 1])
        else:
            img = Subspace.zero(C.dims.get(q, 0))
        quo = Quotient(num, below.sum_with(img))
        self._e[key] = quo
        return quo

    def _page(self, r: int) -> Page:
        C = self.C
        dims, diffs, reps = {}, {}, {}
        for q in C.degrees:
            for p in range(C.length + 1):
                eq = self.e(r, p, q)
                if eq.dim:
                    dims[(p, q)] = eq.dim
                    reps[(p, q)] = C.to_ambient(q, eq.reps)
                tgt = (self.e(r, p + r, q - 1)
                       if q - 1 in C.dims and p + r <= C.length else None)
                if eq.dim and tgt is not None and tgt.dim:
                    m = induced_map_on_subquotient(
                        C._dmat[q], eq.num, eq.den, tgt.num, tgt.den)
                    if not m.is_zero():
                        diffs[(p, q)] = m
        return Page(r, dims, diffs, reps)

    def final(self) -> Page:
        return self.page(self.rmax)

    def convergence_check(self) -> bool:
        C = self.C
        last = self.final()
        for q in C.degrees:
            ker = Subspace.span(C.boundary(q).left_kernel())
            if q + 1 in C.dims:
                img = Subspace.span(C.boundary(q + 1))
            else:
                img = Subspace.zero(C.dims[q])
            bq = Quotient(ker, img).dim
            tot = sum(last.dims.get((p, q), 0) for p in range(C.length + 1))
            if tot != bq:
                return False
        return True


def compute_pages(C: FilteredComplexF2) -> list[Page]:
    return SpectralSequence(C).pages


def degeneracy_index(pages: list[Page]) -> int:
    top = 0
    for page in pages:
        if any(not d.is_zero() for d in page.differentials.values()):
            top = page.r + 1
    return top


def dualize(C: FilteredComplexF2) -> FilteredComplexF2:
    """Dual complex: reflected degrees, transposed boundaries, and the
    annihilator filtration F~_p = ann(F_{L+1-p})."""
    n = max(C.degrees)
    lo = min(C.degrees)
    dims = {n + lo - q: C.dims[q] for q in C.degrees}
    bnds = {}
    for q in C.degrees:
        if q + 1 in C.dims:
            bnds[n + lo - q] = C.boundary(q + 1).transpose()
    filt = {}
    for q in C.degrees:
        filt[n + lo - q] = [
            C.filtration[q][C.length + 1 - p].annihilator()
            if C.length + 1 - p <= C.length else Subspace.full(C.dims[q])
            for p in range(C.length + 1)]
    # the dual of a valid filtered complex is valid; skip re-validation
    return FilteredComplexF2(dims, bnds, filt, validate=False)


def cohomology_view(page: Page, n_top: int) -> Page:
    """Reflect a homological page into cohomological indexing:
    E_r^{s,t} = E^r_{N-s, N-t} with d_r of bidegree (-r, +1)."""
    dims = {(n_top - p, n_top - q): v for (p, q), v in page.dims.items()}
    diffs = {(n_top - p, n_top - q): m
             for (p, q), m in page.differentials.items()}
    reps = {(n_top - p, n_top - q): m
            for (p, q), m in page.representatives.items()}
    return Page(page.r, dims, diffs, reps)
