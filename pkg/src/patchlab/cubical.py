"""Cubical subdivision of a triangulation, the dual hypersurface, and
generic cellular (co)sheaf complexes with cup products.

Cells are pairs (lo, up) of nested simplices, of dimension
dim(up) - dim(lo); the face relation is (a, b) <= (lo, up) iff
lo <= a <= b <= up.  The dual hypersurface is the subcomplex of cells
whose lower simplex is at least an edge.
"""

from __future__ import annotations

import itertools

from .f2_linalg import F2Matrix, Quotient, Subspace
from .triangulation import Triangulation


class CubicalComplex:
    """All nested pairs of simplices of a triangulation."""

    def __init__(self, K: Triangulation):
        self.K = K
        self.n = K.n
        cells: list[tuple[int, int]] = []
        for t in K.simplex_list:
            ut = K.simplex_ids[t]
            for k in range(1, len(t) + 1):
                for sub in itertools.combinations(t, k):
                    cells.append((K.simplex_ids[sub], ut))
        dim = lambda c: (len(K.simplex_list[c[1]]) - len(K.simplex_list[c[0]]))
        cells.sort(key=lambda c: (dim(c), c))
        self.cells = cells
        self.cell_id = {c: i for i, c in enumerate(cells)}
        self.by_dim: dict[int, list[int]] = {}
        for i, c in enumerate(cells):
            self.by_dim.setdefault(dim(c), []).append(i)

    def lower(self, cid: int) -> tuple[int, ...]:
        return self.K.simplex_list[self.cells[cid][0]]

    def upper(self, cid: int) -> tuple[int, ...]:
        return self.K.simplex_list[self.cells[cid][1]]

    def dim(self, cid: int) -> int:
        return len(self.upper(cid)) - len(self.lower(cid))

    def is_dual(self, cid: int) -> bool:
        """Whether the cell lies on the dual hypersurface (lower simplex
        of dimension at least one)."""
        return len(self.lower(cid)) >= 2

    def facets_of(self, cid: int) -> list[int]:
        lo, up = self.lower(cid), self.upper(cid)
        ids = self.K.simplex_ids
        out = []
        rest = [v for v in up if v not in lo]
        for v in rest:
            bigger = tuple(sorted(lo + (v,)))
            out.append(self.cell_id[(ids[bigger], ids[up])])
            smaller = tuple(x for x in up if x != v)
            out.append(self.cell_id[(ids[lo], ids[smaller])])
        return out

    def faces_between(self, cid: int, middle_size: int) -> list[tuple[int, int, int]]:
        """Triples (first, mid, second) of cell ids splitting the cell at
        every intermediate simplex with middle_size vertices."""
        lo, up = self.lower(cid), self.upper(cid)
        ids = self.K.simplex_ids
        out = []
        rest = [v for v in up if v not in lo]
        take = middle_size - len(lo)
        for extra in itertools.combinations(rest, take):
            mid = tuple(sorted(lo + extra))
            out.append((self.cell_id[(ids[lo], ids[mid])],
                        self.cell_id[(ids[mid], ids[up])],
                        cid))
        return out

    def dual_cells(self, k: int) -> list[int]:
        return [c for c in self.by_dim.get(k, []) if self.is_dual(c)]


class AssembledComplex:
    """A graded complex of F2 vector spaces indexed by cells.

    mats[q] maps degree q to degree q + step (step = -1 for chain
    complexes of cosheaves, +1 for cochain complexes of sheaves), acting
    on row vectors.
    """

    def __init__(self, degrees, dims, mats, step, basis, offsets):
        self.degrees = degrees
        self.dims = dims
        self.mats = mats
        self.step = step
        self.basis = basis          # per degree: list of (cell, local index)
        self.offsets = offsets      # per degree: cell -> first coordinate
        self._hcache: dict[int, Quotient] = {}

    def verify_square_zero(self) -> None:
        for q in self.degrees:
            a = self.mats.get(q)
            b = self.mats.get(q + self.step)
            if a is not None and b is not None and not (a @ b).is_zero():
                raise ValueError("differential does not square to zero")

    def map_out(self, q: int) -> F2Matrix:
        m = self.mats.get(q)
        if m is None:
            return F2Matrix.zeros(self.dims.get(q, 0),
                                  self.dims.get(q + self.step, 0))
        return m

    def homology(self, q: int) -> Quotient:
        if q in self._hcache:
            return self._hcache[q]
        ker = Subspace.span(self.map_out(q).left_kernel())
        prev = self.mats.get(q - self.step)
        if prev is None:
            img = Subspace.zero(self.dims.get(q, 0))
        else:
            img = Subspace.span(prev)
        self._hcache[q] = Quotient(ker, img)
        return self._hcache[q]

    def betti(self) -> dict[int, int]:
        return {q: self.homology(q).dim for q in self.degrees}


def assemble(cells_by_degree: dict[int, list], coeff_dim, arrow, step: int,
             facets_of) -> AssembledComplex:
    """Assemble the (co)chain complex of a cellular (co)sheaf.

    coeff_dim(cell) gives the stalk dimension; arrow(cell, facet) the
    extension (cosheaf, step -1) or restriction (sheaf, step +1) matrix
    between the stalks; facets_of(cell) the codimension-1 faces.
    """
    degrees = sorted(cells_by_degree)
    dims, basis, offsets = {}, {}, {}
    for q in degrees:
        off, bas, total = {}, [], 0
        for cell in cells_by_degree[q]:
            d = coeff_dim(cell)
            off[cell] = total
            bas.extend((cell, i) for i in range(d))
            total += d
        dims[q], basis[q], offsets[q] = total, bas, off
    mats = {}
    for q in degrees:
        tq = q + step
        if tq not in dims:
            continue
        rows = [0] * dims[q]
        if step == -1:
            for cell in cells_by_degree[q]:
                src = offsets[q][cell]
                for f in facets_of(cell):
                    blk = arrow(cell, f)
                    dst = offsets[tq][f]
                    for i in range(blk.nrows):
                        rows[src + i] ^= blk.row_int(i) << dst
        else:
            for cell in cells_by_degree[tq]:
                dst = offsets[tq][cell]
                for f in facets_of(cell):
                    blk = arrow(f, cell)
                    src = offsets[q][f]
                    for i in range(blk.nrows):
                        rows[src + i] ^= blk.row_int(i) << dst
        mats[q] = F2Matrix.from_ints(rows, dims[tq])
    return AssembledComplex(degrees, dims, mats, step, basis, offsets)


def check_functoriality(cells, coeff_dim, arrow, facets_of) -> None:
    """Composites along any two length-2 chains with equal ends agree."""
    for cell in cells:
        paths: dict[int, F2Matrix] = {}
        for f in facets_of(cell):
            a = arrow(cell, f)
            for g in facets_of(f):
                comp = a @ arrow(f, g)
                if g in paths:
                    if not (paths[g] + comp).is_zero():
                        raise ValueError("cosheaf is not functorial")
                else:
                    paths[g] = comp


def cup_product(cx: CubicalComplex, cells_by_degree, cochain_cx: AssembledComplex,
                algebra, alpha: F2Matrix, k: int, beta: F2Matrix, l: int) -> F2Matrix:
    """Cubical cup product of cochains valued in a sheaf of algebras.

    algebra provides rho(face, cell) restriction matrices and
    multiply(cell, a, b) in the stalk.  alpha, beta are row vectors over
    the degree-k and degree-l cochain groups.
    """
    out_deg = k + l
    if out_deg not in cochain_cx.dims:
        return F2Matrix.zeros(1, 0)
    out = F2Matrix.zeros(1, cochain_cx.dims[out_deg])
    off_k = cochain_cx.offsets[k]
    off_l = cochain_cx.offsets[l]
    off_o = cochain_cx.offsets[out_deg]
    for cell in cells_by_degree[out_deg]:
        lo = cx.lower(cell)
        acc = None
        for first, second, _ in cx.faces_between(cell, len(lo) + k):
            if first not in off_k or second not in off_l:
                continue
            va = _slice(alpha, off_k[first], algebra.dim(first))
            vb = _slice(beta, off_l[second], algebra.dim(second))
            ra = va @ algebra.rho(first, cell)
            rb = vb @ algebra.rho(second, cell)
            term = algebra.multiply(cell, ra, rb)
            acc = term if acc is None else acc + term
        if acc is not None:
            _write_slice(out, off_o[cell], acc)
    return out


def _slice(row: F2Matrix, start: int, width: int) -> F2Matrix:
    return row.cols_range(start, start + width)


def _write_slice(row: F2Matrix, start: int, value: F2Matrix) -> None:
    for j in range(value.ncols):
        if value.get(0, j):
            row.set(0, start + j, row.get(0, start + j) ^ 1)
