"""Numerical invariants of a patchworked hypersurface and a verifier.

The rank ell (largest q0 through which restriction to the hypersurface
stays injective on cohomology), the degeneracy index r of the filtered
spectral sequence, and the cup-length number iota are computed here,
together with a verdict table in which both sides of every structural
statement are recomputed by independent code paths.  A failed verdict is
reported as data; only internal inconsistencies (two constructions of
the same object disagreeing) raise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cubical import cup_product
from .f2_linalg import F2Matrix
from .patchwork import Patchwork, RealLift
from .spectral import (FilteredComplexF2, Page, SpectralSequence,
                       degeneracy_index, dualize)
from .tropical import homology_table


class InternalInconsistency(RuntimeError):
    """Two independent constructions of the same object disagree."""


# -- rank and iota -----------------------------------------------------

def rank_ell(pw: Patchwork) -> int:
    """Largest q0 such that i^q: H^q(RP) -> H^q(RX) is injective for all
    q <= q0 (-1 if even i^0 fails, only possible for empty RX)."""
    n = pw.lift.n
    ell = -1
    for q in range(n):
        istar = pw.induced_i_star(q)
        hp_dim = pw.lift.cochain_p.homology(q).dim
        r_up = istar.rank()
        r_down = pw.induced_i(q).rank()
        if r_up != r_down:
            raise InternalInconsistency(
                f"rank(i^{q}) = {r_up} but rank(i_{q}) = {r_down}")
        if r_up != hp_dim:
            break
        ell = q
    return ell


def iota_omega(lift: RealLift) -> int:
    """iota of the canonical degree class on RP."""
    row = lift.omega_rx_cubical()
    return lift.ring.iota(lift.ring.class_of(1, row))


# -- spectral bookkeeping ---------------------------------------------

@dataclass
class SpectralData:
    """The filtered complex of a T-hypersurface with both the homological
    spectral sequence and the dual (cohomological) one."""

    complex: FilteredComplexF2
    homological: SpectralSequence
    dual: SpectralSequence
    n: int                       # ambient dimension; RX has dimension n-1

    @classmethod
    def of(cls, pw: Patchwork, method: str = "intersection") -> "SpectralData":
        C = pw.filtered_t_complex(method)
        return cls(C, SpectralSequence(C), SpectralSequence(dualize(C)),
                   pw.lift.n)

    # Cohomological indexing: E_r^{s,t} is the dual-complex page entry at
    # (L - s, N - t) where N is the top chain degree; its differential has
    # bidegree (-r, +1).
    def coh_index(self, s: int, t: int) -> tuple[int, int]:
        return (self.complex.length - s,
                max(self.complex.degrees) + min(self.complex.degrees) - t)

    def coh_page(self, r: int) -> Page:
        L = self.complex.length
        top = max(self.complex.degrees) + min(self.complex.degrees)
        src = self.dual.page(r)
        dims = {(L - p, top - q): v for (p, q), v in src.dims.items()}
        diffs = {(L - p, top - q): m for (p, q), m in src.differentials.items()}
        reps = {(L - p, top - q): m
                for (p, q), m in src.representatives.items()}
        return Page(r, dims, diffs, reps)


def total_page_dim(page: Page) -> int:
    return sum(page.dims.values())


def degenerates_at(ss: SpectralSequence, r0: int, betti: list[int]) -> bool:
    """Whether every differential vanishes from page r0 on, detected as
    total page-r0 dimension already matching the total Betti number."""
    return total_page_dim(ss.page(r0)) == sum(betti)


# -- page pairing ------------------------------------------------------

def page_pairing(pw: Patchwork, sd: SpectralData, r: int,
                 s: int, t: int) -> F2Matrix:
    """Cup pairing E_r^{s,t} x E_r^{n-1-s,n-1-t} -> E_r^{n-1,n-1}.

    Cohomological page representatives are cochains on RX in the folded
    cell basis; cup them there and project the result into the top page
    entry, which must be a line.
    """
    n = sd.n
    dual, D = sd.dual, sd.dual.C
    top = dual.e(r, *sd.coh_index(n - 1, n - 1))
    if top.dim != 1:
        raise InternalInconsistency(
            f"E_{r}^({n-1},{n-1}) has dimension {top.dim}, not 1")
    ea = dual.e(r, *sd.coh_index(s, t))
    eb = dual.e(r, *sd.coh_index(n - 1 - s, n - 1 - t))
    qa, qb = sd.coh_index(s, t)[1], sd.coh_index(n - 1 - s, n - 1 - t)[1]
    A = ea.reps @ D._basis[qa]          # cochains of degree t
    B = eb.reps @ D._basis[qb]          # cochains of degree n-1-t
    cells = pw.lift._cells_by_degree()
    out = F2Matrix.zeros(ea.dim, eb.dim)
    top_deg = sd.coh_index(n - 1, n - 1)[1]
    for i in range(ea.dim):
        a = A.take_rows([i])
        for j in range(eb.dim):
            b = B.take_rows([j])
            g = cup_product(pw.lift.cx, cells, pw.cochain_x, pw.algebra_x,
                            a, t, b, n - 1 - t)
            try:
                c = top.coords(g @ D._basis_inv[top_deg])
            except ValueError as exc:
                raise InternalInconsistency(
                    f"cup of page-{r} representatives leaves the page "
                    f"at ({s},{t})") from exc
            out.set(i, j, c.get(0, 0))
    return out


def pairing_nondegenerate(pw: Patchwork, sd: SpectralData, r: int) -> bool:
    """The page pairing has full rank on every complementary pair."""
    page = sd.coh_page(r)
    n = sd.n
    for (s, t), d in page.dims.items():
        mirror = page.dims.get((n - 1 - s, n - 1 - t), 0)
        if d != mirror:
            return False
        if page_pairing(pw, sd, r, s, t).rank() != d:
            return False
    return True


# -- the verifier ------------------------------------------------------

@dataclass
class InvariantRecord:
    n: int
    betti_rx: list[int]
    betti_rp: list[int]
    tropical_table: dict[tuple[int, int], int]
    ell: int
    r_index: int
    iota_degree: int
    iota_p: int | None
    verdicts: dict[str, dict] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)

    def counterexample(self) -> bool:
        return any(not v["pass"] for v in self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "betti_rx": self.betti_rx,
            "betti_rp": self.betti_rp,
            "tropical_table": {f"{p},{q}": v
                               for (p, q), v in sorted(self.tropical_table.items())},
            "ell": self.ell,
            "r_index": self.r_index,
            "iota_degree": self.iota_degree,
            "iota_p": self.iota_p,
            "verdicts": {k: dict(v) for k, v in sorted(self.verdicts.items())},
            "skipped": dict(sorted(self.skipped.items())),
            "counterexample": self.counterexample(),
        }


def _euler(dims: dict[tuple[int, int], int]) -> int:
    return sum((-1) ** q * v for (_, q), v in dims.items())


def verify(pw: Patchwork, sd: SpectralData | None = None, *,
           odd_degree_simplex: bool = False,
           viro_triangulation: bool = False,
           check_pairing: bool = False,
           iota_p: int | None = None,
           compute_iota_p: bool = False) -> InvariantRecord:
    """Recompute both sides of every structural statement and record a
    verdict table together with the numerical invariants."""
    lift = pw.lift
    n = lift.n
    if not pw.filtrations_agree():
        raise InternalInconsistency("the two filtration constructions differ")
    if sd is None:
        sd = SpectralData.of(pw)
    ss = sd.homological
    direct = pw.t_hypersurface()
    betti = direct.betti()
    trop = homology_table(lift.trop, "x")
    record = InvariantRecord(
        n=n,
        betti_rx=betti,
        betti_rp=lift.cube_betti(),
        tropical_table=trop,
        ell=rank_ell(pw),
        r_index=degeneracy_index(ss.pages),
        iota_degree=iota_omega(lift),
        iota_p=None,
    )
    if iota_p is not None:
        record.iota_p = iota_p
    elif compute_iota_p:
        record.iota_p = lift.ring.iota_space()
    verdicts = record.verdicts
    skipped = record.skipped

    verdicts["filtration_equality"] = {"pass": True, "witness": None}

    ok = pw.graded_dims_match_tropical()
    verdicts["graded_pieces"] = {"pass": ok, "witness": None}

    # E^1 page = tropical homology of the dual hypersurface
    e1 = ss.page(1).dims
    mism = [(p, q) for p in range(n + 1) for q in range(n)
            if e1.get((p, q), 0) != trop.get((p, q), 0)]
    verdicts["e1_tropical"] = {"pass": not mism, "witness": mism or None}

    # convergence against the independent direct model
    fin = ss.final().dims
    bad = [q for q in range(n)
           if sum(fin.get((p, q), 0) for p in range(n + 1)) != betti[q]]
    verdicts["convergence"] = {"pass": not bad, "witness": bad or None}

    # structure of the late pages
    offenders = []
    for r in range(2, ss.rmax + 1):
        for (p, q), d in ss.page(r).dims.items():
            if d and (not (p == q or p + q == n - 1)
                      or not 0 <= q <= n - 1):
                offenders.append((r, p, q))
    verdicts["structure"] = {"pass": not offenders,
                             "witness": offenders or None}

    # symmetry of dimensions and differential ranks, cohomological side
    sym_bad = []
    for r in range(1, ss.rmax + 1):
        page = sd.coh_page(r)
        hom = ss.page(r)
        for (s, t), d in page.dims.items():
            if page.dims.get((n - 1 - s, n - 1 - t), 0) != d:
                sym_bad.append(("dim", r, s, t))
            if hom.dims.get((s, t), 0) != d:
                raise InternalInconsistency(
                    f"dual page {r} disagrees with primal at ({s},{t})")
        for (s, t), m in page.differentials.items():
            mirror = page.differentials.get((n - 1 - s + r, n - 2 - t))
            mr = mirror.rank() if mirror is not None else 0
            if m.rank() != mr:
                sym_bad.append(("rank", r, s, t))
    verdicts["symmetry"] = {"pass": not sym_bad, "witness": sym_bad or None}

    # Euler characteristic is page-invariant
    eulers = {r: _euler(ss.page(r).dims) for r in range(ss.rmax + 1)}
    ok = len(set(eulers.values())) == 1
    verdicts["euler_page_invariance"] = {"pass": ok,
                                         "witness": None if ok else eulers}

    # individual upper bounds
    bad = [q for q in range(n)
           if betti[q] > sum(trop.get((p, q), 0) for p in range(n + 1))]
    verdicts["betti_upper_bound"] = {"pass": not bad, "witness": bad or None}

    # total Betti number congruence for even-dimensional hypersurfaces
    if (n - 1) % 2 == 0:
        total_b = sum(betti)
        total_h = sum(trop.values())
        ok = (total_b - total_h) % 4 == 0
        verdicts["mod4_congruence"] = {
            "pass": ok, "witness": None if ok else (total_b, total_h)}
    else:
        skipped["mod4_congruence"] = "hypersurface dimension is odd"

    # inequalities between the invariants
    ell, r_idx, iw = record.ell, record.r_index, record.iota_degree
    verdicts["rank_vs_index"] = {
        "pass": ell >= (n - r_idx) // 2,
        "witness": {"ell": ell, "r": r_idx}}
    verdicts["index_bound"] = {
        "pass": r_idx <= max(2, n - 2 * ell - 1),
        "witness": {"ell": ell, "r": r_idx}}
    verdicts["rank_vs_iota"] = {
        "pass": ell >= iw,
        "witness": {"ell": ell, "iota_degree": iw}}

    # vanishing criterion, valid when iota(RP) is large enough
    ip = record.iota_p
    if ip is None:
        skipped["vanishing_criterion"] = "iota_p not computed"
    elif ip < n // 2 - 2:
        skipped["vanishing_criterion"] = "iota(RP) below the threshold"
    else:
        bad = []
        for r0 in range(2, n + 1):
            if (n - r0) % 2:
                continue
            lhs = degenerates_at(ss, r0, betti)
            q = (n - r0) // 2
            rhs = (pw.induced_i_star(q).rank()
                   == lift.cochain_p.homology(q).dim)
            if lhs != rhs:
                bad.append((r0, lhs, rhs))
        verdicts["vanishing_criterion"] = {"pass": not bad,
                                           "witness": bad or None}

    if odd_degree_simplex:
        verdicts["odd_degree_degeneration"] = {
            "pass": r_idx <= 2, "witness": {"r": r_idx}}
    if viro_triangulation:
        ok = ell >= (n - 1) // 2 and r_idx <= 2
        verdicts["viro_degeneration"] = {
            "pass": ok, "witness": {"ell": ell, "r": r_idx}}

    if check_pairing:
        ok = all(pairing_nondegenerate(pw, sd, r) for r in (1, 2))
        verdicts["page_pairing"] = {"pass": ok, "witness": None}

    return record


def analyze(lift: RealLift, eps, **kwargs) -> tuple[InvariantRecord, SpectralData, Patchwork]:
    """Full per-sign pipeline: patchwork, spectral data, verdicts."""
    pw = Patchwork(lift, eps)
    sd = SpectralData.of(pw)
    record = verify(pw, sd, **kwargs)
    return record, sd, pw
