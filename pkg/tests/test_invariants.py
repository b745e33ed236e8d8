import json

from patchlab.invariants import (SpectralData, analyze, degenerates_at,
                                 iota_omega, pairing_nondegenerate, rank_ell,
                                 total_page_dim, verify)
from patchlab.patchwork import Patchwork
from patchlab.spectral import degeneracy_index
from patchlab.triangulation import SignDistribution

from conftest import lift_for, triangulation_for


class TestHarnackCubic:
    def setup_method(self):
        t = triangulation_for("viro(2,3)")
        self.lift = lift_for("viro(2,3)")
        self.eps = SignDistribution.harnack(t)

    def test_analyze_full(self):
        record, sd, pw = analyze(self.lift, self.eps, check_pairing=True,
                                 compute_iota_p=True, viro_triangulation=True)
        assert record.n == 2
        assert record.betti_rx == [2, 2]      # genus-one curve: two ovals
        assert record.betti_rp == [1, 1, 1]
        assert record.ell == 1
        assert record.r_index == 1
        assert record.iota_degree == 1
        assert record.iota_p == 1
        assert not record.counterexample()
        assert list(record.skipped) == ["mod4_congruence"]  # a curve is odd-dim

    def test_record_serializes(self):
        record, _, _ = analyze(self.lift, self.eps)
        blob = json.dumps(record.to_json(), sort_keys=True)
        again = json.loads(blob)
        assert again["ell"] == record.ell
        assert again["counterexample"] is False


class TestSpectralData:
    def test_coh_page_mirrors_homological_dims(self):
        t = triangulation_for("viro(2,2)")
        pw = Patchwork(lift_for("viro(2,2)"),
                       SignDistribution.from_seed(t, 3))
        sd = SpectralData.of(pw)
        n = sd.n
        for r in (1, 2, 3):
            hom = sd.homological.page(r).dims
            coh = sd.coh_page(r).dims
            assert coh == hom

    def test_degenerates_at_matches_index(self):
        t = triangulation_for("viro(2,3)")
        lift = lift_for("viro(2,3)")
        betti_cache = {}
        for seed in range(4):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            sd = SpectralData.of(pw)
            betti = pw.t_hypersurface().betti()
            ridx = degeneracy_index(sd.homological.pages)
            for r0 in range(1, sd.homological.rmax + 1):
                assert (degenerates_at(sd.homological, r0, betti)
                        == (ridx <= r0))

    def test_total_dim_decreases_along_pages(self):
        t = triangulation_for("viro(3,2)")
        pw = Patchwork(lift_for("viro(3,2)"),
                       SignDistribution.from_seed(t, 11))
        sd = SpectralData.of(pw)
        dims = [total_page_dim(sd.homological.page(r))
                for r in range(sd.homological.rmax + 1)]
        assert all(a >= b for a, b in zip(dims, dims[1:]))


class TestVerify:
    def test_random_signs_all_pass(self):
        t = triangulation_for("viro(2,2)")
        lift = lift_for("viro(2,2)")
        for seed in range(5):
            pw = Patchwork(lift, SignDistribution.from_seed(t, seed))
            record = verify(pw, compute_iota_p=True, viro_triangulation=True)
            assert not record.counterexample(), record.to_json()

    def test_skip_reasons(self):
        t = triangulation_for("viro(2,2)")
        pw = Patchwork(lift_for("viro(2,2)"),
                       SignDistribution.from_seed(t, 0))
        record = verify(pw)
        assert "mod4_congruence" in record.skipped     # curve: odd-dimensional
        assert "vanishing_criterion" in record.skipped  # iota_p not supplied

    def test_pairing_nondegenerate_small(self):
        t = triangulation_for("viro(2,2)")
        pw = Patchwork(lift_for("viro(2,2)"),
                       SignDistribution.from_seed(t, 1))
        sd = SpectralData.of(pw)
        assert pairing_nondegenerate(pw, sd, 1)
        assert pairing_nondegenerate(pw, sd, 2)

    def test_rank_and_iota_helpers(self):
        # the harnack conic is an oval, null-homotopic in RP^2, so the
        # restriction on H^1 vanishes; a harnack cubic keeps a pseudoline
        conic = triangulation_for("viro(2,2)")
        pw = Patchwork(lift_for("viro(2,2)"), SignDistribution.harnack(conic))
        assert rank_ell(pw) == 0
        cubic = triangulation_for("viro(2,3)")
        pw = Patchwork(lift_for("viro(2,3)"), SignDistribution.harnack(cubic))
        assert rank_ell(pw) == 1
        assert iota_omega(pw.lift) == 1
