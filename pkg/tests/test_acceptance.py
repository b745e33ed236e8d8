"""End-to-end acceptance checks: fixture figures, exhaustive small cases,
randomized sweeps per instance family, the n = 4 instances, and the
timing budget.  Sign distributions are drawn from fixed seed ranges so
every run sees the same sample."""

import gc
import itertools
import time
from math import comb

import pytest

import conftest
from conftest import lift_for, torus_signs, triangulation_for
from patchlab import group_algebra as ga
from patchlab.f2_linalg import F2Matrix, Subspace
from patchlab.invariants import (SpectralData, analyze, degenerates_at,
                                 iota_omega, rank_ell, total_page_dim, verify)
from patchlab.patchwork import Patchwork, RealLift, coordinate_circle
from patchlab.polytope import build_polytope
from patchlab.spectral import SpectralSequence
from patchlab.triangulation import (SignDistribution, triangulate_family,
                                    viro)
from patchlab.tropical import homology_table


# -- shared randomized sweep ------------------------------------------
#
# One full verifier run per (instance, seed); several criteria below
# assert different verdict rows of the same records.

SWEEP_PLAN = {
    "viro(2,3)": dict(seeds=20, viro_triangulation=True,
                      odd_degree_simplex=True, check_pairing=True),
    "viro(3,2)": dict(seeds=10, viro_triangulation=True, check_pairing=True),
    "cube(2,3)": dict(seeds=20, check_pairing=True),
    "viro(3,1)": dict(seeds=10, viro_triangulation=True,
                      odd_degree_simplex=True),
    "viro(3,3)": dict(seeds=3, viro_triangulation=True,
                      odd_degree_simplex=True),
}

_SWEEP_RECORDS: dict = {}


def sweep_records(spec):
    if spec not in _SWEEP_RECORDS:
        plan = dict(SWEEP_PLAN[spec])
        seeds = plan.pop("seeds")
        t = triangulation_for(spec)
        lift = lift_for(spec)
        records = []
        for seed in range(seeds):
            eps = SignDistribution.from_seed(t, seed)
            record, sd, pw = analyze(lift, eps, compute_iota_p=True, **plan)
            records.append(record)
            del sd, pw
        _SWEEP_RECORDS[spec] = records
    return _SWEEP_RECORDS[spec]


def all_sweep_records():
    return [(spec, seed, rec)
            for spec in SWEEP_PLAN
            for seed, rec in enumerate(sweep_records(spec))]


def assert_verdict(name):
    for spec, seed, rec in all_sweep_records():
        assert name in rec.verdicts, (spec, seed)
        v = rec.verdicts[name]
        assert v["pass"], (spec, seed, name, v["witness"])


def _clear_lift_caches():
    conftest._LIFT_CACHE.clear()
    _SWEEP_RECORDS.clear()
    gc.collect()


# -- shared heavy degree-3 dim-4 instance ------------------------------

_HEAVY43: dict = {}


def heavy43(seed, with_rank=False):
    """Degeneration (and optionally restriction-rank) facts for one sign
    distribution on the standard triangulation of the dilated 4-simplex
    of degree 3; results are cached, the big objects are not."""
    key = (seed, with_rank)
    if key in _HEAVY43:
        return _HEAVY43[key]
    _clear_lift_caches()
    t = viro(4, 3)
    lift = RealLift(t)
    pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
    out = {}
    if with_rank:
        out["ell_ge_1"] = all(
            pw.induced_i_star(q).rank() == lift.cochain_p.homology(q).dim
            for q in (0, 1))
    betti = pw.t_hypersurface().betti()
    ss = SpectralSequence(pw.filtered_t_complex())
    out["degenerate_at_2"] = degenerates_at(ss, 2, betti)
    _HEAVY43[key] = out
    del ss, pw, lift, t
    gc.collect()
    return out


# -- 1: the torus quartic figure ---------------------------------------

def test_01_torus_quartic_figure():
    lift = lift_for("fig_torus")
    pw = Patchwork(lift, torus_signs())
    top = pw.t_hypersurface()
    assert top.betti() == [2, 2]
    comps = top.components()
    assert len(comps) == 2
    h1 = lift.cube_homology(1)
    G = F2Matrix.stack([h1.coords(coordinate_circle(lift, ax))
                        for ax in range(2)])
    classes = []
    for cyc in top.component_cycles():
        sol = G.solve_left(h1.coords(cyc))
        classes.append((sol.get(0, 0), sol.get(0, 1)))
    # one null-homologous oval and one diagonal (1,1) curve in the torus
    assert sorted(classes) == [(0, 0), (1, 1)]


# -- 2: degree-1 hypersurfaces, every sign distribution ----------------

def test_02_degree_one_is_a_projective_hyperplane():
    for n in (1, 2, 3, 4):
        t = viro(n, 1)
        lift = RealLift(t)
        for values in itertools.product((0, 1), repeat=len(t.points)):
            pw = Patchwork(lift, SignDistribution(t, list(values)))
            assert pw.t_hypersurface().betti() == [1] * n, (n, values)


# -- 3: the first page is the sign-independent tropical table ----------

FIRST_PAGE_PLAN = (
    [f"viro(2,{d})" for d in range(1, 6)]
    + [f"viro(3,{d})" for d in range(1, 4)]
    + [f"cube(2,{d})" for d in range(1, 5)]
)


def test_03_first_page_equals_tropical_homology():
    for spec in FIRST_PAGE_PLAN:
        t = triangulation_for(spec)
        lift = lift_for(spec)
        trop = homology_table(lift.trop, "x")
        n = lift.n
        for seed in range(20):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            ss = SpectralSequence(pw.filtered_t_complex())
            e1 = ss.page(1).dims
            for p in range(n + 1):
                for q in range(n):
                    assert e1.get((p, q), 0) == trop.get((p, q), 0), \
                        (spec, seed, p, q)
            del ss, pw


# -- 4-8, 14: verdict rows of the shared randomized sweep --------------

def test_04_pages_converge_to_direct_betti():
    assert_verdict("convergence")


def test_05_late_pages_supported_on_diagonal_and_antidiagonal():
    assert_verdict("structure")


def test_06_symmetry_of_dims_ranks_and_pairing():
    assert_verdict("symmetry")
    for spec in ("viro(2,3)", "viro(3,2)", "cube(2,3)"):
        for seed, rec in enumerate(sweep_records(spec)):
            v = rec.verdicts["page_pairing"]
            assert v["pass"], (spec, seed)


def test_07_both_filtration_constructions_agree():
    # verify() raises on disagreement; the verdict row records it passed
    assert_verdict("filtration_equality")


def test_08_graded_pieces_match_tropical_coefficients():
    assert_verdict("graded_pieces")


def test_14_invariant_inequalities():
    assert_verdict("rank_vs_index")
    assert_verdict("index_bound")
    assert_verdict("rank_vs_iota")


# -- 12: total Betti congruence mod 4 for surfaces ---------------------

def test_12_total_betti_mod4():
    for spec in ("viro(3,1)", "viro(3,2)", "viro(3,3)", "cube(3,2)"):
        t = triangulation_for(spec)
        lift = lift_for(spec)
        total_trop = sum(homology_table(lift.trop, "x").values())
        for seed in range(20):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            total_b = sum(pw.t_hypersurface().betti())
            assert (total_b - total_trop) % 4 == 0, (spec, seed)
            del pw


# -- 13: iota of the ambient spaces and of the degree class ------------

def test_13a_iota_of_ambient_spaces():
    _clear_lift_caches()
    for n in (1, 2, 3):
        for d in (1, 2, 3):
            assert lift_for(f"viro({n},{d})").ring.iota_space() == n - 1
    for n in (1, 2, 3):
        for d in (1, 2):
            assert lift_for(f"cube({n},{d})").ring.iota_space() == 0
    for a, b in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        t = triangulate_family(build_polytope(
            f"product(simplex({a},1),simplex({b},1))"))
        lift = RealLift(t)
        assert lift.ring.iota_space() == max(a, b) - 1, (a, b)
        del lift, t
        gc.collect()


def test_13b_iota_of_degree_class_by_parity():
    # on a product of projective spaces of dimensions a, b the degree
    # class is d1*h1 + d2*h2 mod 2; iota is -1, a-1, b-1 or
    # max(a,b)-1 according to the parity pattern
    _clear_lift_caches()
    for a, b in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        for d1 in (1, 2):
            for d2 in (1, 2):
                expected = {
                    (1, 1): max(a, b) - 1,
                    (1, 0): a - 1,
                    (0, 1): b - 1,
                    (0, 0): -1,
                }[(d1 % 2, d2 % 2)]
                t = triangulate_family(build_polytope(
                    f"product(simplex({a},{d1}),simplex({b},{d2}))"))
                lift = RealLift(t)
                assert iota_omega(lift) == expected, (a, b, d1, d2)
                del lift, t
                gc.collect()


# -- 15: the group-algebra toolbox, exhaustively for m <= 4 ------------

def _all_subspaces(m):
    seen = {}
    vecs = list(range(1, 1 << m))
    for size in range(m + 1):
        for basis in itertools.combinations(vecs, size):
            members = {0}
            for v in basis:
                members |= {w ^ v for w in members}
            seen.setdefault(frozenset(members), list(basis))
    return list(seen.items())


def test_15_group_algebra_lemmas():
    start = time.monotonic()
    for m in range(5):
        # augmentation-power dimensions
        for k in range(m + 2):
            want = sum(comb(m, j) for j in range(k, m + 1))
            assert ga.aug_power_basis(m, k).dim == want

        # indicator convolution: ind(U) * ind(W) is ind(U + W) when the
        # intersection is trivial and zero otherwise
        subs = _all_subspaces(m)
        for mem_u, bas_u in subs:
            iu = ga.subspace_indicator(bas_u, m)
            for mem_w, bas_w in subs:
                iw = ga.subspace_indicator(bas_w, m)
                prod = ga.multiply(iu, iw, m)
                if mem_u & mem_w == {0}:
                    assert prod == ga.subspace_indicator(
                        bas_u + bas_w, m)
                else:
                    assert prod == 0

        # wedge lift multiplicativity on coordinate subspaces
        for s in map(frozenset, itertools.chain.from_iterable(
                itertools.combinations(range(m), k) for k in range(m + 1))):
            for t in map(frozenset, itertools.chain.from_iterable(
                    itertools.combinations(range(m), k)
                    for k in range(m + 1))):
                ind_s = ga.subspace_indicator([1 << i for i in s], m)
                ind_t = ga.subspace_indicator([1 << i for i in t], m)
                prod = ga.multiply(ind_s, ind_t, m)
                if s & t:
                    assert prod == 0
                else:
                    assert prod == ga.subspace_indicator(
                        [1 << i for i in s | t], m)

        # function-degree filtration is multiplicative
        for k in range(m + 1):
            ok = ga.degree_filtration(m, k)
            for l in range(m + 1 - k):
                ol = ga.degree_filtration(m, l)
                target = ga.degree_filtration(m, min(k + l, m))
                for i in range(ok.dim):
                    for j in range(ol.dim):
                        prod = ok.mat.row_int(i) & ol.mat.row_int(j)
                        assert target.contains_matrix(
                            F2Matrix.from_ints([prod], 1 << m))

        # affine complement count: p independent conditions leave
        # 2^m - 2^(m-p) points outside their solution set
        for mem, basis in _all_subspaces(m):
            covs = Subspace.span(F2Matrix.from_ints(basis, m)).mat
            p = covs.nrows
            for shift in range(1 << p):
                sols = sum(
                    1 for v in range(1 << m)
                    if all((bin(covs.row_int(i) & v).count("1")
                            + (shift >> i)) & 1 == 0 for i in range(p)))
                assert (1 << m) - sols == (1 << m) - (1 << (m - p))
    assert time.monotonic() - start < 10.0


# -- 9: the n = 4 biconditional ----------------------------------------

def test_09_dim4_degeneration_iff_injective_restriction():
    # the built-in triangulation of simplex(4,2) is the same recursive
    # one, so both named sources denote a single instance
    t = viro(4, 2)
    fam = triangulate_family(build_polytope("simplex(4,2)"))
    assert fam.points == t.points
    assert sorted(fam.maximal) == sorted(t.maximal)

    _clear_lift_caches()
    lift = RealLift(t)
    for seed in range(10):
        start = time.monotonic()
        pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
        betti = pw.t_hypersurface().betti()
        ss = SpectralSequence(pw.filtered_t_complex())
        lhs = degenerates_at(ss, 2, betti)
        rhs = (pw.induced_i_star(1).rank()
               == lift.cochain_p.homology(1).dim)
        assert lhs == rhs, seed
        assert time.monotonic() - start < 300.0, seed
        del ss, pw
        gc.collect()
    del lift
    gc.collect()


# -- 10: odd-degree simplex instances degenerate at the second page ----

def test_10_odd_degree_simplex_degenerates_at_two():
    for spec in ("viro(1,1)", "viro(1,3)", "viro(2,1)", "viro(2,3)",
                 "viro(3,1)", "viro(3,3)", "viro(4,1)"):
        t = triangulation_for(spec)
        lift = RealLift(t)
        n = lift.n
        seeds = 10 if n <= 2 else (5 if n == 3 else 3)
        for seed in range(seeds):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            betti = pw.t_hypersurface().betti()
            ss = SpectralSequence(pw.filtered_t_complex())
            assert degenerates_at(ss, 2, betti), (spec, seed)
            del ss, pw
        del lift
    gc.collect()
    assert heavy43(0, with_rank=True)["degenerate_at_2"]
    assert heavy43(1)["degenerate_at_2"]


# -- 11: standard triangulations have large rank and early collapse ----

def test_11_standard_triangulations_rank_and_collapse():
    for n in (1, 2, 3):
        for d in (1, 2, 3):
            t = triangulation_for(f"viro({n},{d})")
            lift = lift_for(f"viro({n},{d})")
            for seed in range(5):
                pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
                assert rank_ell(pw) >= (n - 1) // 2, (n, d, seed)
                betti = pw.t_hypersurface().betti()
                ss = SpectralSequence(pw.filtered_t_complex())
                assert degenerates_at(ss, 2, betti), (n, d, seed)
                del ss, pw
    _clear_lift_caches()
    for d in (1, 2):
        t = viro(4, d)
        lift = RealLift(t)
        for seed in range(3):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            assert rank_ell(pw) >= 1, (d, seed)
            betti = pw.t_hypersurface().betti()
            ss = SpectralSequence(pw.filtered_t_complex())
            assert degenerates_at(ss, 2, betti), (d, seed)
            del ss, pw
            gc.collect()
        del lift
        gc.collect()
    facts = heavy43(0, with_rank=True)
    assert facts["ell_ge_1"]
    assert facts["degenerate_at_2"]


# -- 16: timing budget on named instances ------------------------------

@pytest.mark.parametrize("spec,budget", [
    ("viro(2,6)", 5.0),
    ("viro(3,4)", 60.0),
    ("viro(4,2)", 300.0),
])
def test_16_timing_budget(spec, budget):
    _clear_lift_caches()
    n, d = map(int, spec[5:-1].split(","))
    t = viro(n, d)
    start = time.monotonic()
    lift = RealLift(t)
    eps = SignDistribution.from_seed(t, 0)
    record, sd, pw = analyze(lift, eps, compute_iota_p=True,
                             viro_triangulation=True,
                             odd_degree_simplex=d % 2 == 1)
    elapsed = time.monotonic() - start
    assert not record.counterexample(), record.to_json()
    assert elapsed < budget, (spec, elapsed)
    del record, sd, pw, lift
    gc.collect()
