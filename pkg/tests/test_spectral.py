"""The engine is cross-checked against a brute-force oracle on random
filtered simplicial chain complexes: vertices carry weights, and F_p is
spanned by the simplices whose minimum vertex weight is at least p (a
subcomplex, since deleting a vertex can only raise the minimum)."""

import itertools
import random

from patchlab.f2_linalg import F2Matrix, Quotient, Subspace
from patchlab.spectral import (FilteredComplexF2, SpectralSequence,
                               compute_pages, degeneracy_index, dualize)


def random_filtered_complex(seed, nverts=5, levels=2):
    rng = random.Random(seed)
    verts = range(nverts)
    chosen = {(v,) for v in verts}
    for size in (2, 3, 4):
        for s in itertools.combinations(verts, size):
            if rng.random() < 0.4:
                chosen.add(s)
    closed = set()
    for s in chosen:
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    by_dim = {}
    for s in closed:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for q in by_dim:
        by_dim[q].sort()
    weights = {v: rng.randrange(levels + 1) for v in verts}

    index = {q: {s: i for i, s in enumerate(by_dim[q])} for q in by_dim}
    dims = {q: len(by_dim[q]) for q in by_dim}
    bnds = {}
    for q in by_dim:
        if q >= 1:
            m = F2Matrix.zeros(dims[q], dims[q - 1])
            for i, s in enumerate(by_dim[q]):
                for f in itertools.combinations(s, q):
                    m.set(i, index[q - 1][f], 1)
            bnds[q] = m
    filt = {}
    for q in by_dim:
        piece = []
        for p in range(levels + 1):
            rows = [i for i, s in enumerate(by_dim[q])
                    if min(weights[v] for v in s) >= p]
            m = F2Matrix.zeros(len(rows), dims[q])
            for j, i in enumerate(rows):
                m.set(j, i, 1)
            piece.append(Subspace.span(m))
        filt[q] = piece
    return FilteredComplexF2(dims, bnds, filt)


def flevel(C, q, p):
    if q not in C.dims:
        return Subspace.zero(0)
    if p <= 0:
        return C.filtration[q][0]
    if p > C.length:
        return Subspace.zero(C.dims[q])
    return C.filtration[q][p]


def oracle_z(C, r, p, q):
    """F_p intersected with the boundary preimage of F_{p+r}, computed
    with generic subspace operations and no adapted coordinates."""
    if q not in C.dims:
        return Subspace.zero(0)
    fp = flevel(C, q, p)
    if r < 0:
        return fp
    A = fp.mat @ C.boundary(q)
    if q - 1 in C.dims:
        M = flevel(C, q - 1, p + r).annihilator().mat.transpose()
    else:
        M = F2Matrix.zeros(0, 0)
    ker = (A @ M).left_kernel()
    return Subspace.span(ker @ fp.mat)


def oracle_e_dim(C, r, p, q):
    num = oracle_z(C, r, p, q)
    below = oracle_z(C, r - 1, p + 1, q)
    src = oracle_z(C, r - 1, p - r + 1, q + 1)
    if q + 1 in C.dims and src.dim:
        img = Subspace.span(src.mat @ C.boundary(q + 1))
    else:
        img = Subspace.zero(C.dims[q])
    return Quotient(num, below.sum_with(img)).dim


def oracle_betti(C, q):
    ker = Subspace.span(C.boundary(q).left_kernel())
    if q + 1 in C.dims:
        img = Subspace.span(C.boundary(q + 1))
    else:
        img = Subspace.zero(C.dims[q])
    return Quotient(ker, img).dim


SEEDS = range(6)


class TestAgainstOracle:
    def test_cycle_subspaces(self):
        for seed in SEEDS:
            C = random_filtered_complex(seed)
            ss = SpectralSequence(C)
            for q in C.degrees:
                for p in range(C.length + 1):
                    for r in range(ss.rmax + 1):
                        got = Subspace.span(
                            C.to_ambient(q, ss.z(r, p, q).mat))
                        assert got == oracle_z(C, r, p, q), (seed, r, p, q)

    def test_page_entry_dims(self):
        for seed in SEEDS:
            C = random_filtered_complex(seed)
            ss = SpectralSequence(C)
            for r in range(ss.rmax + 1):
                page = ss.page(r)
                for q in C.degrees:
                    for p in range(C.length + 1):
                        want = oracle_e_dim(C, r, p, q)
                        assert page.dims.get((p, q), 0) == want, (seed, r, p, q)

    def test_convergence_to_homology(self):
        for seed in SEEDS:
            C = random_filtered_complex(seed)
            ss = SpectralSequence(C)
            assert ss.convergence_check()
            last = ss.final()
            for q in C.degrees:
                tot = sum(last.dims.get((p, q), 0)
                          for p in range(C.length + 1))
                assert tot == oracle_betti(C, q)

    def test_differential_ranks_account_for_dimension_drop(self):
        # dim E_{r+1} = dim E_r - rank(d_r into) - rank(d_r out of)
        for seed in SEEDS:
            C = random_filtered_complex(seed)
            ss = SpectralSequence(C)
            for r in range(ss.rmax):
                cur, nxt = ss.page(r), ss.page(r + 1)
                for pq in set(cur.dims) | set(nxt.dims):
                    p, q = pq
                    out = cur.rank(p, q)
                    into = cur.rank(p - r, q + 1)
                    assert (nxt.dims.get(pq, 0)
                            == cur.dims.get(pq, 0) - out - into)


class TestDuality:
    def test_dual_page_dims_reflect(self):
        for seed in SEEDS:
            C = random_filtered_complex(seed)
            D = dualize(C)
            ss, ssd = SpectralSequence(C), SpectralSequence(D)
            refl = max(C.degrees) + min(C.degrees)
            for r in range(ss.rmax + 1):
                prim = ss.page(r).dims
                dual = ssd.page(r).dims
                flipped = {(C.length - p, refl - q): v
                           for (p, q), v in dual.items()}
                assert flipped == prim, (seed, r)

    def test_double_dual_restores_pages(self):
        C = random_filtered_complex(3)
        DD = dualize(dualize(C))
        assert DD.dims == C.dims
        for r in (0, 1, 2):
            assert (SpectralSequence(DD).page(r).dims
                    == SpectralSequence(C).page(r).dims)


class TestDegeneracyIndex:
    def test_no_differentials(self):
        C = FilteredComplexF2({0: 2}, {}, {0: [Subspace.full(2)]})
        assert degeneracy_index(compute_pages(C)) == 0

    def test_acyclic_two_term(self):
        C = FilteredComplexF2(
            {0: 1, 1: 1}, {1: F2Matrix.identity(1)},
            {0: [Subspace.full(1)], 1: [Subspace.full(1)]})
        pages = compute_pages(C)
        assert degeneracy_index(pages) == 1
        assert pages[1].dims == {}

    def test_trivial_filtration_page_zero_is_chain_groups(self):
        C = random_filtered_complex(4, levels=0)
        page0 = SpectralSequence(C).page(0)
        assert page0.dims == {(0, q): d for q, d in C.dims.items() if d}

    def test_interval_with_split_weights(self):
        # vertices a (weight 0), b (weight 1), edge ab: the page-0
        # differential kills the edge against a, leaving H_0 in column 1
        d1 = F2Matrix.from_lists([[1, 1]], 2)
        f0 = [Subspace.full(2),
              Subspace.span(F2Matrix.from_lists([[0, 1]], 2))]
        f1 = [Subspace.full(1), Subspace.zero(1)]
        C = FilteredComplexF2({0: 2, 1: 1}, {1: d1}, {0: f0, 1: f1})
        ss = SpectralSequence(C)
        assert degeneracy_index(ss.pages) == 1
        assert ss.final().dims == {(1, 0): 1}


class TestValidation:
    def test_rejects_nondecreasing_filtration(self):
        f = [Subspace.span(F2Matrix.from_lists([[1, 0]], 2)),
             Subspace.full(2)]
        try:
            FilteredComplexF2({0: 2}, {}, {0: f})
        except ValueError:
            return
        raise AssertionError("expected a ValueError")

    def test_rejects_boundary_leaving_filtration(self):
        d1 = F2Matrix.from_lists([[1, 1]], 2)
        f0 = [Subspace.full(2),
              Subspace.span(F2Matrix.from_lists([[0, 1]], 2))]
        f1 = [Subspace.full(1), Subspace.full(1)]   # edge stays, image not
        try:
            FilteredComplexF2({0: 2, 1: 1}, {1: d1}, {0: f0, 1: f1})
        except ValueError:
            return
        raise AssertionError("expected a ValueError")
