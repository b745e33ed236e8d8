"""Tropical coefficient systems on the cubical subdivision and their
(co)homology.

Per cell (lo, up) the ambient space is V = t(F2)/Sed(up) with a
pivot-completion basis; the polytope cosheaf carries the full exterior
powers of V, the hypersurface cosheaf the sums of exterior powers of
edge-covector kernels below the lower simplex.  Exactness against the
contraction by the wedge covector of the lower simplex is verified
cell by cell.
"""

from __future__ import annotations

import itertools
from math import comb

from .cubical import AssembledComplex, CubicalComplex, assemble
from .f2_linalg import F2Matrix, Quotient, Subspace


def subsets(m: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(m), k))


def exterior_power(mat: F2Matrix, k: int) -> F2Matrix:
    """Induced map on k-th exterior powers, in sorted-subset bases."""
    a, b = mat.nrows, mat.ncols
    rows_s = subsets(a, k)
    cols_s = subsets(b, k)
    out = F2Matrix.zeros(len(rows_s), len(cols_s))
    dense = mat.to_lists()
    for i, s in enumerate(rows_s):
        for j, t in enumerate(cols_s):
            if k == 0:
                out.set(i, j, 1)
                continue
            minor = [[dense[r][c] for c in t] for r in s]
            if F2Matrix.from_lists(minor, k).rank() == k:
                out.set(i, j, 1)
    return out


def contraction_matrix(cov: F2Matrix, m: int, k: int, p: int) -> F2Matrix:
    """Matrix of contraction by a p-covector on Lambda^k V -> Lambda^{k-p} V.

    cov is a row over the p-subsets of the basis of V*; the defining
    adjunction beta(alpha . v) = (beta wedge alpha)(v) gives, over F2,
    e*_T . e_S = e_{S minus T} when T is inside S and 0 otherwise.
    """
    src = subsets(m, k)
    dst = subsets(m, k - p) if k >= p else []
    dst_index = {t: j for j, t in enumerate(dst)}
    psub = subsets(m, p)
    out = F2Matrix.zeros(len(src), len(dst))
    for i, s in enumerate(src):
        sset = set(s)
        for t_i, t in enumerate(psub):
            if cov.get(0, t_i) and set(t) <= sset:
                rest = tuple(x for x in s if x not in t)
                j = dst_index[rest]
                out.set(i, j, out.get(i, j) ^ 1)
    return out


class TropicalCoefficients:
    """Bases of the polytope and hypersurface coefficient spaces for every
    cubical cell, with extension matrices between them."""

    def __init__(self, cx: CubicalComplex):
        self.cx = cx
        K = cx.K
        self.n = K.n
        # ambient quotient per upper simplex
        self._vq: dict[int, Quotient] = {}
        for s in K.simplex_list:
            sid = K.simplex_ids[s]
            sed = K.sed(s)
            self._vq[sid] = Quotient(Subspace.full(self.n), sed)
        self._quot_maps: dict[tuple[int, int], F2Matrix] = {}
        self._ext_cache: dict[tuple[int, int, int], F2Matrix] = {}
        self._fx_cache: dict[tuple[int, int], Subspace] = {}
        self._omega_bar: dict[tuple[int, int], F2Matrix] = {}

    # -- ambient spaces ----------------------------------------------

    def vdim(self, cid: int) -> int:
        return self._vq[self.cx.cells[cid][1]].dim

    def vreps(self, cid: int) -> F2Matrix:
        return self._vq[self.cx.cells[cid][1]].reps

    def quot_map(self, up_src: int, up_dst: int) -> F2Matrix:
        """t(F2)/Sed(src) -> t(F2)/Sed(dst) for nested uppers."""
        key = (up_src, up_dst)
        if key not in self._quot_maps:
            q = self._vq[up_dst]
            self._quot_maps[key] = q.coords(self._vq[up_src].reps)
        return self._quot_maps[key]

    def ext_p(self, k: int, cid: int, fid: int) -> F2Matrix:
        """Extension matrix of the k-th polytope cosheaf, cell -> facet."""
        key = (k, self.cx.cells[cid][1], self.cx.cells[fid][1])
        if key not in self._ext_cache:
            m = self.quot_map(key[1], key[2])
            self._ext_cache[key] = exterior_power(m, k)
        return self._ext_cache[key]

    # -- hypersurface coefficients ------------------------------------

    def omega_on_upper(self, simplex: tuple[int, ...], up_sid: int) -> F2Matrix:
        """The wedge covector of a simplex expressed over subsets of the
        chosen basis of t(F2)/Sed(upper)."""
        K = self.cx.K
        p = len(simplex) - 1
        om = K.omega(simplex)
        lam = exterior_power(self._vq[up_sid].reps, p)
        return om @ lam.transpose()

    def omega_on_v(self, simplex: tuple[int, ...], cid: int) -> F2Matrix:
        """The wedge covector of a simplex expressed over subsets of the
        chosen basis of V(cid)."""
        return self.omega_on_upper(simplex, self.cx.cells[cid][1])

    def fx(self, k: int, cid: int) -> Subspace:
        key = (k, cid)
        if key in self._fx_cache:
            return self._fx_cache[key]
        lo = self.cx.lower(cid)
        m = self.vdim(cid)
        amb = comb(m, k)
        if len(lo) < 2:
            space = Subspace.zero(amb)
        else:
            gens = []
            for e in itertools.combinations(lo, 2):
                cov = self.omega_on_v(e, cid)  # row over V* basis (p=1)
                ker = cov.transpose().left_kernel()
                gens.append(exterior_power(ker, k))
            space = Subspace.span(F2Matrix.stack(gens))
        self._fx_cache[key] = space
        return space

    def fx_dim(self, k: int, cid: int) -> int:
        return self.fx(k, cid).dim

    def fp_dim(self, k: int, cid: int) -> int:
        return comb(self.vdim(cid), k)

    def ext_x(self, k: int, cid: int, fid: int) -> F2Matrix:
        src = self.fx(k, cid)
        dst = self.fx(k, fid)
        img = src.mat @ self.ext_p(k, cid, fid)
        sol = dst.mat.solve_left(img)
        if sol is None:
            raise ValueError("hypersurface cosheaf not closed under extension")
        return sol

    def contraction_kernel(self, k: int, cid: int) -> Subspace:
        """Kernel of contraction by the wedge covector of the lower
        simplex (independent characterization of fx)."""
        lo = self.cx.lower(cid)
        p = len(lo) - 1
        m = self.vdim(cid)
        key = (self.cx.cells[cid][0], self.cx.cells[cid][1])
        if key not in self._omega_bar:
            self._omega_bar[key] = self.omega_on_v(lo, cid)
        cov = self._omega_bar[key]
        mat = contraction_matrix(cov, m, k, p)
        if k < p:
            # contraction lands in 0; kernel is everything
            return Subspace.full(comb(m, k)) if p >= 1 and len(lo) >= 2 else \
                Subspace.zero(comb(m, k))
        ker = mat.left_kernel()
        return Subspace.span(ker)

    # -- assembled complexes ------------------------------------------

    def cells_all(self) -> dict[int, list[int]]:
        return {q: list(v) for q, v in self.cx.by_dim.items()}

    def complex_p(self, p: int) -> AssembledComplex:
        return assemble(self.cells_all(), lambda c: self.fp_dim(p, c),
                        lambda c, f: self.ext_p(p, c, f), -1,
                        self.cx.facets_of)

    def complex_x(self, p: int) -> AssembledComplex:
        return assemble(self.cells_all(), lambda c: self.fx_dim(p, c),
                        lambda c, f: self.ext_x(p, c, f), -1,
                        self.cx.facets_of)

    def inclusion_chain_map(self, p: int, x_cx: AssembledComplex,
                            p_cx: AssembledComplex) -> dict[int, F2Matrix]:
        out = {}
        for q in x_cx.degrees:
            m = F2Matrix.zeros(x_cx.dims[q], p_cx.dims[q])
            rows = [0] * x_cx.dims[q]
            for cell, off in x_cx.offsets[q].items():
                base = self.fx(p, cell).mat
                dst = p_cx.offsets[q][cell]
                for i in range(base.nrows):
                    rows[off + i] ^= base.row_int(i) << dst
            out[q] = F2Matrix.from_ints(rows, p_cx.dims[q])
        return out


def homology_table(trop: TropicalCoefficients, which: str) -> dict[tuple[int, int], int]:
    """dims of H_{p,q} for the hypersurface ('x') or polytope ('p')."""
    n = trop.n
    out = {}
    for p in range(n + 1):
        cxq = trop.complex_x(p) if which == "x" else trop.complex_p(p)
        betti = cxq.betti()
        for q in range(n + 1):
            out[(p, q)] = betti.get(q, 0)
    return out


def induced_homology_map(src_cx: AssembledComplex, dst_cx: AssembledComplex,
                         chain_map: dict[int, F2Matrix], q: int) -> F2Matrix:
    hs = src_cx.homology(q)
    hd = dst_cx.homology(q)
    if hs.dim == 0 or hd.dim == 0:
        return F2Matrix.zeros(hs.dim, hd.dim)
    return hd.coords(hs.reps @ chain_map[q])
