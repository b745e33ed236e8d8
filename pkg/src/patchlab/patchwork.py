"""The real lift of a primitive triangulation, T-hypersurfaces, their
filtered chain complexes, and the cohomology ring of the ambient real
toric variety.

The real toric variety RP is modelled twice: as a Delta-complex whose
q-cells are pairs (simplex, argument) and as the cubical model whose
chain complex is the cosheaf complex of F2[t(F2)/Sed] over the cubical
subdivision of K (the folding identification makes its basis elements
the real cubes (v; lo, up)).  The T-hypersurface is the subcomplex
spanned by the argument sets of a sign distribution; its chain complex
carries the augmentation filtration, computed both by intersection and
by the per-edge affine-subspace construction.
"""

from __future__ import annotations

import itertools

from . import group_algebra as ga
from .cubical import AssembledComplex, CubicalComplex, assemble, cup_product
from .f2_linalg import F2Matrix, Quotient, Subspace
from .spectral import FilteredComplexF2
from .tropical import TropicalCoefficients
from .triangulation import SignDistribution, Triangulation


class RealLift:
    """All sign-independent data: real cells, the canonical cocycle, the
    chain and cochain models of RP, and its cohomology ring."""

    # Heavy models are built on first access: large instances that only
    # need the hypersurface side never pay for the ambient chain models.
    _LAZY = {
        "simp_cells": "_build_simplicial",
        "simp_offsets": "_build_simplicial",
        "simp_dims": "_build_simplicial",
        "simp_bnd": "_build_simplicial",
        "omega_rx_simp": "_build_simplicial",
        "chain_p": "_build_cubical",
        "cochain_p": "_build_cubical",
        "s_map": "_build_subdivision_map",
        "ring": "_build_ring",
    }

    def __init__(self, K: Triangulation):
        self.K = K
        self.n = K.n
        self.cx = CubicalComplex(K)
        self.trop = TropicalCoefficients(self.cx)
        self._pointmaps: dict[tuple[int, int], list[int]] = {}
        self._edge_cov: dict[tuple[tuple[int, ...], int], int] = {}

    def __getattr__(self, name):
        builder = RealLift._LAZY.get(name)
        if builder is None:
            raise AttributeError(name)
        getattr(self, builder)()
        return self.__dict__[name]

    def _build_ring(self) -> None:
        self.ring = RPRing(self)

    # -- ambient quotients as point sets ------------------------------

    def mdim(self, sid: int) -> int:
        return self.trop._vq[sid].dim

    def point_map(self, src_sid: int, dst_sid: int) -> list[int]:
        """Images of the 2^m points of t/Sed(src) in t/Sed(dst)."""
        key = (src_sid, dst_sid)
        if key not in self._pointmaps:
            mat = self.trop.quot_map(src_sid, dst_sid)
            rows = [mat.row_int(i) for i in range(mat.nrows)]
            img = [0] * (1 << mat.nrows)
            for v in range(1, 1 << mat.nrows):
                lsb = v & -v
                img[v] = img[v ^ lsb] ^ rows[lsb.bit_length() - 1]
            self._pointmaps[key] = img
        return self._pointmaps[key]

    def edge_cov(self, edge: tuple[int, ...], up_sid: int) -> int:
        """omega(edge) on t/Sed(up), as an int over the basis of V."""
        key = (edge, up_sid)
        if key not in self._edge_cov:
            row = self.trop.omega_on_upper(edge, up_sid)
            cov = row.row_int(0)
            if cov == 0:
                raise ValueError("edge covector vanishes on the quotient")
            self._edge_cov[key] = cov
        return self._edge_cov[key]

    # -- simplicial model of RP ---------------------------------------

    def _build_simplicial(self) -> None:
        K = self.K
        self.simp_cells: dict[int, list[tuple[int, int]]] = {}
        self.simp_offsets: dict[int, dict[tuple[int, int], int]] = {}
        for s in K.simplex_list:
            q = len(s) - 1
            self.simp_cells.setdefault(q, [])
        for s in K.simplex_list:
            q = len(s) - 1
            sid = K.simplex_ids[s]
            for v in range(1 << self.mdim(sid)):
                self.simp_cells[q].append((sid, v))
        self.simp_dims = {}
        for q, cells in self.simp_cells.items():
            self.simp_offsets[q] = {c: i for i, c in enumerate(cells)}
            self.simp_dims[q] = len(cells)
        self.simp_bnd: dict[int, F2Matrix] = {}
        for q in sorted(self.simp_cells):
            if q == 0:
                continue
            rows = [0] * self.simp_dims[q]
            off = self.simp_offsets[q - 1]
            for i, (sid, v) in enumerate(self.simp_cells[q]):
                s = K.simplex_list[sid]
                for drop in range(len(s)):
                    tau = s[:drop] + s[drop + 1:]
                    tid = K.simplex_ids[tau]
                    w = self.point_map(sid, tid)[v]
                    rows[i] ^= 1 << off[(tid, w)]
            self.simp_bnd[q] = F2Matrix.from_ints(rows, self.simp_dims[q - 1])
        for q in sorted(self.simp_bnd):
            if q + 1 in self.simp_bnd:
                if not (self.simp_bnd[q + 1] @ self.simp_bnd[q]).is_zero():
                    raise ValueError("simplicial boundary fails to square to zero")
        # the canonical cocycle on real edges
        row = 0
        for i, (sid, v) in enumerate(self.simp_cells.get(1, [])):
            cov = self.edge_cov(self.K.simplex_list[sid], sid)
            if bin(cov & v).count("1") & 1:
                row ^= 1 << i
        self.omega_rx_simp = F2Matrix.from_ints([row], self.simp_dims.get(1, 0))
        if 2 in self.simp_bnd:
            if not (self.simp_bnd[2] @ self.omega_rx_simp.transpose()).is_zero():
                raise ValueError("canonical cocycle is not closed")

    def simp_homology(self, q: int) -> Quotient:
        d = self.simp_bnd.get(q, F2Matrix.zeros(self.simp_dims.get(q, 0),
                                                self.simp_dims.get(q - 1, 0)))
        ker = Subspace.span(d.left_kernel())
        up = self.simp_bnd.get(q + 1)
        img = Subspace.span(up) if up is not None else \
            Subspace.zero(self.simp_dims.get(q, 0))
        return Quotient(ker, img)

    def simp_betti(self) -> list[int]:
        return [self.simp_homology(q).dim for q in range(self.n + 1)]

    # -- cubical model of RP ------------------------------------------

    def _cells_by_degree(self) -> dict[int, list[int]]:
        return {q: list(v) for q, v in self.cx.by_dim.items()}

    def _arrow_p(self, cid: int, fid: int) -> F2Matrix:
        up_c, up_f = self.cx.cells[cid][1], self.cx.cells[fid][1]
        mc, mf = self.mdim(up_c), self.mdim(up_f)
        if up_c == up_f:
            return F2Matrix.identity(1 << mc)
        img = self.point_map(up_c, up_f)
        rows = [1 << img[v] for v in range(1 << mc)]
        return F2Matrix.from_ints(rows, 1 << mf)

    def _rho_p(self, fid: int, cid: int) -> F2Matrix:
        return self._arrow_p(cid, fid).transpose()

    def _build_cubical(self) -> None:
        cells = self._cells_by_degree()
        dim = lambda c: 1 << self.mdim(self.cx.cells[c][1])
        self.chain_p = assemble(cells, dim, self._arrow_p, -1,
                                self.cx.facets_of)
        self.cochain_p = assemble(cells, dim, self._rho_p, +1,
                                  self.cx.facets_of)
        self.chain_p.verify_square_zero()
        self.cochain_p.verify_square_zero()
        for q, m in self.chain_p.mats.items():
            if not (m + self.cochain_p.mats[q - 1].transpose()).is_zero():
                raise ValueError("cochain model is not dual to the chain model")

    def cube_homology(self, q: int) -> Quotient:
        return self.chain_p.homology(q)

    def cube_betti(self) -> list[int]:
        return [self.cube_homology(q).dim for q in range(self.n + 1)]

    def mk_filtration_p(self) -> FilteredComplexF2:
        """The augmentation filtration on the chain model of RP."""
        filt = {}
        for q, cells in self._cells_by_degree().items():
            total = self.chain_p.dims[q]
            filt[q] = []
            for k in range(self.n + 1):
                rows = []
                for c in cells:
                    m = self.mdim(self.cx.cells[c][1])
                    sub = ga.aug_power_basis(m, k) if k <= m + 1 else None
                    off = self.chain_p.offsets[q][c]
                    if sub is not None:
                        for i in range(sub.dim):
                            rows.append(sub.mat.row_int(i) << off)
                filt[q].append(Subspace.span(F2Matrix.from_ints(rows, total)))
        return FilteredComplexF2(self.chain_p.dims, self.chain_p.mats, filt)

    # -- subdivision chain map ----------------------------------------

    def _build_subdivision_map(self) -> None:
        """s: simplicial chains -> cubical chains, sending a real simplex
        to the sum of its vertex-corner cubes."""
        K = self.K
        self.s_map: dict[int, F2Matrix] = {}
        for q, cells in self.simp_cells.items():
            rows = [0] * len(cells)
            off = self.chain_p.offsets[q]
            for i, (sid, v) in enumerate(cells):
                s = K.simplex_list[sid]
                for vert in s:
                    cid = self.cx.cell_id[(K.simplex_ids[(vert,)],
                                           K.simplex_ids[s])]
                    rows[i] ^= 1 << (off[cid] + v)
            self.s_map[q] = F2Matrix.from_ints(rows, self.chain_p.dims[q])
        for q in self.simp_bnd:
            lhs = self.s_map[q] @ self.chain_p.mats[q]
            rhs = self.simp_bnd[q] @ self.s_map[q - 1]
            if not (lhs + rhs).is_zero():
                raise ValueError("subdivision map is not a chain map")

    def pullback_cochain(self, q: int, beta: F2Matrix) -> F2Matrix:
        """Cochain pullback along the subdivision map."""
        return beta @ self.s_map[q].transpose()

    def omega_rx_cubical(self) -> F2Matrix:
        """A cubical cocycle representing the class of the canonical
        cocycle, found through the subdivision isomorphism."""
        ring = self.ring
        h1 = ring.h[1]
        target = self._simp_h1().coords(self.omega_rx_simp)
        rows = []
        for i in range(h1.dim):
            rep = h1.reps.take_rows([i])
            rows.append(self._simp_h1().coords(self.pullback_cochain(1, rep)))
        mat = F2Matrix.stack(rows) if rows else F2Matrix.zeros(0, target.ncols)
        sol = mat.solve_left(target)
        if sol is None:
            raise ValueError("subdivision map misses the canonical class")
        return sol @ h1.reps

    def _simp_h1(self) -> Quotient:
        """H^1 of the simplicial cochain model (self-dual cell basis)."""
        if not hasattr(self, "_simp_h1_quot"):
            d1 = (self.simp_bnd[2].transpose() if 2 in self.simp_bnd
                  else F2Matrix.zeros(self.simp_dims[1], 0))
            ker = Subspace.span(d1.left_kernel())
            img = Subspace.span(self.simp_bnd[1].transpose())
            self._simp_h1_quot = Quotient(ker, img)
        return self._simp_h1_quot


def coordinate_circle(lift: RealLift, axis: int) -> F2Matrix:
    """Fundamental cycle of the real lift of the coordinate-axis edge
    path, as a 1-chain of the cubical model of RP (for cube and product
    families whose axis paths are edge paths of K)."""
    K = lift.K
    pid = {p: i for i, p in enumerate(K.points)}
    d = max(p[axis] for p in K.points)
    row = 0
    off = lift.simp_offsets[1]
    for j in range(d):
        a = tuple(j if i == axis else 0 for i in range(lift.n))
        b = tuple(j + 1 if i == axis else 0 for i in range(lift.n))
        if a not in pid or b not in pid:
            raise ValueError("axis path leaves the point set")
        key = tuple(sorted((pid[a], pid[b])))
        if key not in K.simplex_ids:
            raise ValueError("axis path is not an edge path of K")
        sid = K.simplex_ids[key]
        for v in range(1 << lift.mdim(sid)):
            row ^= 1 << off[(sid, v)]
    chain = F2Matrix.from_ints([row], lift.simp_dims[1])
    if not (chain @ lift.simp_bnd[1]).is_zero():
        raise ValueError("axis lift is not a cycle")
    return chain @ lift.s_map[1]


class _PointAlgebra:
    """Sheaf of function algebras on the cubical cells (full quotient
    points, or the argument subsets of a sign distribution)."""

    def __init__(self, lift: RealLift, args: dict[int, list[int]] | None = None):
        self.lift = lift
        self.args = args

    def points(self, cid: int) -> list[int]:
        if self.args is None:
            return list(range(1 << self.lift.mdim(self.lift.cx.cells[cid][1])))
        return self.args[cid]

    def dim(self, cid: int) -> int:
        return len(self.points(cid))

    def rho(self, fid: int, cid: int) -> F2Matrix:
        lift = self.lift
        up_c, up_f = lift.cx.cells[cid][1], lift.cx.cells[fid][1]
        img = (None if up_c == up_f else lift.point_map(up_c, up_f))
        pf = {w: i for i, w in enumerate(self.points(fid))}
        pc = self.points(cid)
        rows = [0] * len(pf)
        for j, v in enumerate(pc):
            w = v if img is None else img[v]
            rows[pf[w]] ^= 1 << j
        return F2Matrix.from_ints(rows, len(pc))

    def multiply(self, cid: int, a: F2Matrix, b: F2Matrix) -> F2Matrix:
        return F2Matrix.from_ints([a.row_int(0) & b.row_int(0)], a.ncols)


class RPRing:
    """Cohomology ring of RP on the cubical cochain model."""

    class _LazyH(dict):
        def __init__(self, cochain, top):
            super().__init__()
            self._cochain = cochain
            self._top = top

        def __missing__(self, q):
            if not 0 <= q <= self._top:
                raise KeyError(q)
            self[q] = self._cochain.homology(q)
            return self[q]

        def get(self, q, default=None):
            try:
                return self[q]
            except KeyError:
                return default

    def __init__(self, lift: RealLift):
        self.lift = lift
        self.algebra = _PointAlgebra(lift)
        self.cochain = lift.cochain_p
        self.h = RPRing._LazyH(self.cochain, lift.n)

    def betti(self) -> list[int]:
        return [self.h[q].dim for q in range(self.lift.n + 1)]

    def cup(self, alpha: F2Matrix, k: int, beta: F2Matrix, l: int) -> F2Matrix:
        return cup_product(self.lift.cx, self.lift._cells_by_degree(),
                           self.cochain, self.algebra, alpha, k, beta, l)

    def class_of(self, q: int, cocycle: F2Matrix) -> F2Matrix:
        return self.h[q].coords(cocycle)

    def cup_class(self, k: int, a: F2Matrix, l: int, b: F2Matrix) -> F2Matrix:
        """Class coordinates of the cup of two classes given by their
        coordinates in degrees k and l."""
        if k + l > self.lift.n:
            return F2Matrix.zeros(1, 0)
        ra = a @ self.h[k].reps if self.h[k].dim else F2Matrix.zeros(1, self.cochain.dims[k])
        rb = b @ self.h[l].reps if self.h[l].dim else F2Matrix.zeros(1, self.cochain.dims[l])
        return self.class_of(k + l, self.cup(ra, k, rb, l))

    def cup_matrix(self, k: int, a: F2Matrix, l: int) -> F2Matrix:
        """Matrix of (a cup -): H^l -> H^{k+l} for a class a of degree k."""
        hl = self.h[l]
        out = F2Matrix.zeros(hl.dim, self.h.get(k + l, hl).dim
                             if k + l <= self.lift.n else 0)
        rows = []
        for i in range(hl.dim):
            e = F2Matrix.zeros(1, hl.dim)
            e.set(0, i, 1)
            rows.append(self.cup_class(k, a, l, e))
        return F2Matrix.stack(rows) if rows else out

    def iota(self, alpha: F2Matrix) -> int:
        """iota of a degree-1 class (given in H^1 coordinates)."""
        n = self.lift.n
        for q in range(-1, n):
            hq1 = self.h.get(q + 1)
            if hq1 is None or hq1.dim == 0:
                continue
            m = self.cup_matrix(1, alpha, q + 1)
            if m.ncols == 0 or m.rank() < hq1.dim:
                return q
        return n - 1

    def iota_space(self) -> int:
        h1 = self.h[1]
        best = -1
        for bits in range(1 << h1.dim):
            alpha = F2Matrix.from_ints([bits], h1.dim)
            best = max(best, self.iota(alpha))
        return best


class Patchwork:
    """All sign-dependent artifacts for one distribution."""

    def __init__(self, lift: RealLift, eps: SignDistribution):
        self.lift = lift
        self.eps = eps
        K = lift.K
        cx = lift.cx
        self.args: dict[int, list[int]] = {}
        for cid in range(len(cx.cells)):
            lo = cx.lower(cid)
            up_sid = cx.cells[cid][1]
            m = lift.mdim(up_sid)
            pts = []
            if len(lo) >= 2:
                conds = []
                for e in itertools.combinations(lo, 2):
                    cov = lift.edge_cov(e, up_sid)
                    d = eps.d_edge(e[0], e[1])
                    conds.append((cov, d))
                for v in range(1 << m):
                    for cov, d in conds:
                        if (bin(cov & v).count("1") + d) & 1:
                            pts.append(v)
                            break
            self.args[cid] = pts
        self._check_arg_counts()
        self._build_chain_models()

    def _check_arg_counts(self) -> None:
        cx = self.lift.cx
        for cid, pts in self.args.items():
            lo = cx.lower(cid)
            p = len(lo) - 1
            m = self.lift.mdim(cx.cells[cid][1])
            total = 1 << m
            want = 0 if p == 0 else total - (total >> p)
            if len(pts) != want:
                raise ValueError("argument count violates the affine lemma")

    # -- chain models --------------------------------------------------

    def _arrow_x(self, cid: int, fid: int) -> F2Matrix:
        lift = self.lift
        up_c, up_f = lift.cx.cells[cid][1], lift.cx.cells[fid][1]
        img = None if up_c == up_f else lift.point_map(up_c, up_f)
        pf = {w: j for j, w in enumerate(self.args[fid])}
        rows = []
        for v in self.args[cid]:
            w = v if img is None else img[v]
            rows.append(1 << pf[w])
        return F2Matrix.from_ints(rows, len(pf))

    def _rho_x(self, fid: int, cid: int) -> F2Matrix:
        return self._arrow_x(cid, fid).transpose()

    def _build_chain_models(self) -> None:
        lift = self.lift
        cells = lift._cells_by_degree()
        self.chain_x = assemble(cells, lambda c: len(self.args[c]),
                                self._arrow_x, -1, lift.cx.facets_of)
        self.cochain_x = assemble(cells, lambda c: len(self.args[c]),
                                  self._rho_x, +1, lift.cx.facets_of)
        self.chain_x.verify_square_zero()
        self.cochain_x.verify_square_zero()
        self.algebra_x = _PointAlgebra(lift, self.args)

    def _ensure_incl(self) -> None:
        """Inclusion / projection chain maps against the ambient model."""
        if hasattr(self, "incl"):
            return
        lift = self.lift
        cells = lift._cells_by_degree()
        self.incl: dict[int, F2Matrix] = {}
        self.proj: dict[int, F2Matrix] = {}
        for q in self.chain_x.degrees:
            rows = [0] * self.chain_x.dims[q]
            for cid in cells[q]:
                xo = self.chain_x.offsets[q][cid]
                po = lift.chain_p.offsets[q][cid]
                for j, v in enumerate(self.args[cid]):
                    rows[xo + j] = 1 << (po + v)
            self.incl[q] = F2Matrix.from_ints(rows, lift.chain_p.dims[q])
            self.proj[q] = self.incl[q].transpose()

    # -- direct model of the T-hypersurface ---------------------------

    def t_hypersurface(self) -> "THypersurface":
        return THypersurface(self)

    # -- filtrations ---------------------------------------------------

    def _cell_filtration_intersection(self, cid: int, k: int) -> Subspace:
        lift = self.lift
        m = lift.mdim(lift.cx.cells[cid][1])
        pts = self.args[cid]
        rows = [1 << v for v in pts]
        span = Subspace.span(F2Matrix.from_ints(rows, 1 << m))
        return span.intersect(ga.aug_power_basis(m, min(k, m + 1)))

    def _cell_filtration_rs(self, cid: int, k: int) -> Subspace:
        lift = self.lift
        cx = lift.cx
        lo = cx.lower(cid)
        up_sid = cx.cells[cid][1]
        m = lift.mdim(up_sid)
        gens = []
        for e in itertools.combinations(lo, 2):
            cov = lift.edge_cov(e, up_sid)
            d = self.eps.d_edge(e[0], e[1])
            want = 1 ^ d
            origin = None
            for v in range(1 << m):
                if bin(cov & v).count("1") & 1 == want:
                    origin = v
                    break
            if origin is None:
                continue
            ker = F2Matrix.from_ints([cov], m).transpose().left_kernel()
            basis = [ker.row_int(i) for i in range(ker.nrows)]
            for size in range(k, len(basis) + 1):
                for sub in itertools.combinations(basis, size):
                    ind = ga.subspace_indicator(list(sub), m)
                    shifted = 0
                    for v in range(1 << m):
                        if ind >> v & 1:
                            shifted |= 1 << (v ^ origin)
                    gens.append(shifted)
        if not gens:
            return Subspace.zero(1 << m)
        return Subspace.span(F2Matrix.from_ints(gens, 1 << m))

    def filtration_x(self, method: str = "intersection") -> dict[int, list[Subspace]]:
        pick = (self._cell_filtration_intersection if method == "intersection"
                else self._cell_filtration_rs)
        lift = self.lift
        filt = {}
        for q, cells in lift._cells_by_degree().items():
            total = self.chain_x.dims[q]
            filt[q] = []
            for k in range(lift.n + 1):
                rows = []
                for cid in cells:
                    pts = self.args[cid]
                    if not pts:
                        continue
                    sub = pick(cid, k)
                    off = self.chain_x.offsets[q][cid]
                    arr = sub.mat.to_bool()
                    for i in range(sub.dim):
                        acc = 0
                        for j, v in enumerate(pts):
                            if arr[i, v]:
                                acc |= 1 << (off + j)
                        if sub.mat.row_int(i) & ~sum(1 << v for v in pts):
                            raise ValueError("filtration leaves the argument span")
                        rows.append(acc)
                filt[q].append(Subspace.span(F2Matrix.from_ints(rows, total)))
        return filt

    def filtered_t_complex(self, method: str = "intersection") -> FilteredComplexF2:
        return FilteredComplexF2(self.chain_x.dims, self.chain_x.mats,
                                 self.filtration_x(method))

    def filtrations_agree(self) -> bool:
        a = self.filtration_x("intersection")
        b = self.filtration_x("renaudineau_shaw")
        for q in a:
            for x, y in zip(a[q], b[q]):
                if x != y:
                    return False
        return True

    def graded_dims_match_tropical(self) -> bool:
        """dim of each cell-wise graded piece equals dim F_k^X."""
        lift = self.lift
        for cid in range(len(lift.cx.cells)):
            if not self.args[cid]:
                continue
            for k in range(lift.n + 1):
                a = self._cell_filtration_intersection(cid, k)
                b = self._cell_filtration_intersection(cid, k + 1)
                if a.dim - b.dim != lift.trop.fx_dim(k, cid):
                    return False
        return True

    # -- homology of the T-hypersurface on the folded model -----------

    def betti_x(self) -> list[int]:
        return [self.chain_x.homology(q).dim for q in range(self.lift.n)]

    def h_x_cochain(self, q: int) -> Quotient:
        return self.cochain_x.homology(q)

    def induced_i(self, q: int) -> F2Matrix:
        """i_q : H_q(RX) -> H_q(RP) on the shared cubical model."""
        self._ensure_incl()
        hx = self.chain_x.homology(q)
        hp = self.lift.chain_p.homology(q)
        if hx.dim == 0 or hp.dim == 0:
            return F2Matrix.zeros(hx.dim, hp.dim)
        return hp.coords(hx.reps @ self.incl[q])

    def induced_i_star(self, q: int) -> F2Matrix:
        """i^q : H^q(RP) -> H^q(RX) from the cochain projection."""
        self._ensure_incl()
        hp = self.lift.cochain_p.homology(q)
        hx = self.cochain_x.homology(q)
        if hp.dim == 0 or hx.dim == 0:
            return F2Matrix.zeros(hp.dim, hx.dim)
        return hx.coords(hp.reps @ self.proj[q])


class THypersurface:
    """Direct cellular model of RX_eps: real cubes (v; lo, up) assembled
    from scratch, with manifold and component analysis."""

    def __init__(self, pw: Patchwork):
        self.pw = pw
        lift = pw.lift
        cx = lift.cx
        self.cells: list[tuple[int, int]] = []          # (cid, v)
        for cid in range(len(cx.cells)):
            for v in pw.args[cid]:
                self.cells.append((cid, v))
        self.cell_index = {c: i for i, c in enumerate(self.cells)}
        self.by_dim: dict[int, list[int]] = {}
        for i, (cid, v) in enumerate(self.cells):
            self.by_dim.setdefault(cx.dim(cid), []).append(i)
        self.pos: dict[int, int] = {}
        for q, lst in self.by_dim.items():
            for p, i in enumerate(lst):
                self.pos[i] = p
        self.bnd: dict[int, F2Matrix] = {}
        dims = {q: len(v) for q, v in self.by_dim.items()}
        for q in sorted(self.by_dim):
            if q == 0:
                continue
            rows = [0] * dims[q]
            for pos, i in enumerate(self.by_dim[q]):
                cid, v = self.cells[i]
                up = cx.cells[cid][1]
                for fid in cx.facets_of(cid):
                    fup = cx.cells[fid][1]
                    w = v if fup == up else lift.point_map(up, fup)[v]
                    j = self.cell_index[(fid, w)]
                    rows[pos] ^= 1 << self.pos[j]
            self.bnd[q] = F2Matrix.from_ints(rows, dims[q - 1])
        self.dims = dims

    def betti(self) -> list[int]:
        n = self.pw.lift.n
        out = []
        for q in range(n):
            d = self.bnd.get(q, F2Matrix.zeros(self.dims.get(q, 0),
                                               self.dims.get(q - 1, 0)))
            ker = Subspace.span(d.left_kernel())
            up = self.bnd.get(q + 1)
            img = Subspace.span(up) if up is not None else \
                Subspace.zero(self.dims.get(q, 0))
            out.append(Quotient(ker, img).dim)
        return out

    def euler(self) -> int:
        return sum((-1) ** q * d for q, d in self.dims.items())

    def components(self) -> list[list[int]]:
        """Connected components, each as the list of its top cells."""
        parent = list(range(len(self.cells)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        cx = self.pw.lift.cx
        lift = self.pw.lift
        for i, (cid, v) in enumerate(self.cells):
            if cx.dim(cid) == 0:
                continue
            up = cx.cells[cid][1]
            for fid in cx.facets_of(cid):
                fup = cx.cells[fid][1]
                w = v if fup == up else lift.point_map(up, fup)[v]
                j = self.cell_index[(fid, w)]
                parent[find(i)] = find(j)
        top = self.pw.lift.n - 1
        comps: dict[int, list[int]] = {}
        for i in self.by_dim.get(top, []):
            comps.setdefault(find(i), []).append(i)
        return sorted(comps.values())

    def manifold_check(self) -> bool:
        """Every (n-2)-cell bounds exactly two (n-1)-cells."""
        n = self.pw.lift.n
        if n - 2 not in self.by_dim:
            return True
        counts = {i: 0 for i in self.by_dim[n - 2]}
        cx = self.pw.lift.cx
        lift = self.pw.lift
        for i in self.by_dim.get(n - 1, []):
            cid, v = self.cells[i]
            up = cx.cells[cid][1]
            for fid in cx.facets_of(cid):
                fup = cx.cells[fid][1]
                w = v if fup == up else lift.point_map(up, fup)[v]
                counts[self.cell_index[(fid, w)]] += 1
        return all(c == 2 for c in counts.values())

    def component_cycles(self) -> list[F2Matrix]:
        """Fundamental mod-2 cycle of each component in the cubical
        chain model of RP."""
        lift = self.pw.lift
        n = lift.n
        out = []
        for comp in self.components():
            row = 0
            for i in comp:
                cid, v = self.cells[i]
                row ^= 1 << (lift.chain_p.offsets[n - 1][cid] + v)
            out.append(F2Matrix.from_ints([row], lift.chain_p.dims[n - 1]))
        return out

    def folding_check(self) -> bool:
        """The assembled cosheaf complex agrees with this direct model
        under the basis bijection (cell, argument)."""
        pw = self.pw

        def folded(q, i):
            cid, v = self.cells[i]
            return pw.chain_x.offsets[q][cid] + pw.args[cid].index(v)

        for q in self.bnd:
            rows = [0] * pw.chain_x.dims[q]
            for pos, i in enumerate(self.by_dim[q]):
                acc = 0
                r = self.bnd[q].row_int(pos)
                for fpos in range(self.dims[q - 1]):
                    if r >> fpos & 1:
                        acc ^= 1 << folded(q - 1, self.by_dim[q - 1][fpos])
                rows[folded(q, i)] = acc
            if not (F2Matrix.from_ints(rows, pw.chain_x.dims[q - 1])
                    + pw.chain_x.mats[q]).is_zero():
                return False
        return True
