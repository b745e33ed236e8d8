"""Command-line front end: build objects, analyze single sign
distributions, run randomized sweeps, and emit deterministic JSON
reports."""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from . import invariants as inv
from .patchwork import RealLift, Patchwork
from .polytope import build_polytope, polytope_from_json
from .triangulation import (SignDistribution, Triangulation,
                            dump_triangulation, load_triangulation,
                            triangulate_family, viro)

_VIRO_RE = re.compile(r"^viro\((\d+),(\d+)\)$")


def _load_source(args) -> tuple[Triangulation, dict, dict]:
    """Triangulation, config echo, and family-derived verifier flags."""
    flags = {"odd_degree_simplex": False, "viro_triangulation": False}
    if getattr(args, "viro", None):
        n, d = args.viro
        t = viro(n, d)
        cfg = {"triangulation": f"viro({n},{d})"}
        flags["viro_triangulation"] = True
        flags["odd_degree_simplex"] = d % 2 == 1
    elif getattr(args, "family", None):
        m = _VIRO_RE.match(args.family)
        if m:
            return _load_source(argparse.Namespace(
                viro=(int(m.group(1)), int(m.group(2))), family=None,
                triangulation=None))
        t = triangulate_family(build_polytope(args.family))
        cfg = {"triangulation": f"family:{args.family}"}
    elif getattr(args, "triangulation", None):
        t = load_triangulation(args.triangulation)
        cfg = {"triangulation": f"file:{args.triangulation}"}
    else:
        raise SystemExit("no triangulation source given "
                         "(--viro, --family or --triangulation)")
    fam = t.polytope.family
    m = re.match(r"^simplex\(\d+,(\d+)\)$", fam)
    if m and int(m.group(1)) % 2 == 1:
        flags["odd_degree_simplex"] = True
    return t, cfg, flags


def _parse_signs(t: Triangulation, spec: str) -> tuple[SignDistribution, dict]:
    if spec == "harnack":
        return SignDistribution.harnack(t), {"signs": "harnack"}
    if spec == "zero":
        return SignDistribution.zero(t), {"signs": "zero"}
    m = re.match(r"^seed:(\d+)$", spec)
    if m:
        return (SignDistribution.from_seed(t, int(m.group(1))),
                {"signs": spec})
    with open(spec) as fh:
        return (SignDistribution.from_json(t, json.load(fh)),
                {"signs": f"file:{spec}"})


def _triangulation_stats(t: Triangulation) -> dict:
    return {"n": t.n, "points": len(t.points),
            "maximal_simplices": len(t.maximal),
            "simplices_by_dim": {str(d): len(t.simplices(d))
                                 for d in range(t.n + 1)}}


def _pages_section(sd: inv.SpectralData, side: str) -> list[dict]:
    out = []
    views = []
    if side in ("homology", "both"):
        views.append(("homology", sd.homological.pages))
    if side in ("cohomology", "both"):
        views.append(("cohomology",
                      [sd.coh_page(r)
                       for r in range(sd.dual.rmax + 1)]))
    for label, pages in views:
        for page in pages:
            out.append({
                "side": label,
                "r": page.r,
                "dims": {f"{p},{q}": v
                         for (p, q), v in sorted(page.dims.items())},
                "ranks": {f"{p},{q}": m.rank()
                          for (p, q), m in sorted(page.differentials.items())},
            })
    return out


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _analysis_report(t: Triangulation, eps: SignDistribution, cfg: dict,
                     flags: dict, side: str) -> dict:
    lift = RealLift(t)
    record, sd, _ = inv.analyze(lift, eps, compute_iota_p=True, **flags)
    rec = record.to_json()
    return {
        "config": cfg,
        "polytope": t.polytope.to_json(),
        "triangulation_stats": _triangulation_stats(t),
        "tropical_table": rec.pop("tropical_table"),
        "betti": {"rx": record.betti_rx, "rp": record.betti_rp},
        "pages": _pages_section(sd, side),
        "invariants": {k: rec[k] for k in
                       ("n", "ell", "r_index", "iota_degree", "iota_p")},
        "verdicts": rec["verdicts"],
        "skipped": rec["skipped"],
        "counterexample": rec["counterexample"],
    }


# -- sweep worker ------------------------------------------------------

_SWEEP_STATE: dict = {}


def _sweep_init(tri_doc: dict, flags: dict) -> None:
    from .triangulation import triangulation_from_json
    t = triangulation_from_json(tri_doc)
    _SWEEP_STATE["t"] = t
    _SWEEP_STATE["lift"] = RealLift(t)
    _SWEEP_STATE["flags"] = flags


def _sweep_item(seed: int) -> dict:
    t = _SWEEP_STATE["t"]
    eps = SignDistribution.from_seed(t, seed)
    record, _, _ = inv.analyze(_SWEEP_STATE["lift"], eps,
                               compute_iota_p=True, **_SWEEP_STATE["flags"])
    doc = record.to_json()
    doc["seed"] = seed
    return doc


# -- subcommands -------------------------------------------------------

def cmd_build_polytope(args) -> int:
    p = build_polytope(args.family)
    _emit(p.to_json(), args.report)
    return 0


def cmd_triangulate(args) -> int:
    t, cfg, _ = _load_source(args)
    doc = t.to_json()
    doc["stats"] = _triangulation_stats(t)
    _emit(doc, args.report)
    return 0


def cmd_analyze(args) -> int:
    t, cfg, flags = _load_source(args)
    eps, scfg = _parse_signs(t, args.signs)
    cfg.update(scfg)
    report = _analysis_report(t, eps, cfg, flags, args.side)
    _emit(report, args.report)
    return 0


def cmd_pages(args) -> int:
    t, cfg, flags = _load_source(args)
    eps, scfg = _parse_signs(t, args.signs)
    cfg.update(scfg)
    lift = RealLift(t)
    pw = Patchwork(lift, eps)
    sd = inv.SpectralData.of(pw)
    report = {"config": {**cfg, "side": args.side},
              "pages": _pages_section(sd, args.side)}
    _emit(report, args.report)
    for page in report["pages"]:
        nonzero = {k: v for k, v in page["dims"].items() if v}
        print(f"[{page['side']}] E_{page['r']}: dims {nonzero} "
              f"ranks {page['ranks']}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    t, cfg, flags = _load_source(args)
    seeds = [args.seed + i for i in range(args.random)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs,
                                 initializer=_sweep_init,
                                 initargs=(t.to_json(), flags)) as ex:
            records = list(ex.map(_sweep_item, seeds))
    else:
        _sweep_init(t.to_json(), flags)
        records = [_sweep_item(s) for s in seeds]
    records.sort(key=lambda r: r["seed"])
    report = {
        "config": {**cfg, "random": args.random, "seed": args.seed},
        "polytope": t.polytope.to_json(),
        "triangulation_stats": _triangulation_stats(t),
        "records": records,
        "counterexample": any(r["counterexample"] for r in records),
    }
    _emit(report, args.report)
    return 0


def cmd_verify(args) -> int:
    t, cfg, flags = _load_source(args)
    eps, scfg = _parse_signs(t, args.signs)
    cfg.update(scfg)
    report = _analysis_report(t, eps, cfg, flags, args.side)
    for name in sorted(report["verdicts"]):
        v = report["verdicts"][name]
        status = "PASS" if v["pass"] else "FAIL"
        print(f"{status} {name}")
    for name, reason in sorted(report["skipped"].items()):
        print(f"SKIP {name}: {reason}")
    if args.report:
        _emit(report, args.report)
    return 0


def _add_source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--viro", nargs=2, type=int, metavar=("N", "D"))
    p.add_argument("--family")
    p.add_argument("--triangulation")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="patchlab")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-polytope", help="emit a polytope as JSON")
    p.add_argument("--family", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_build_polytope)

    p = sub.add_parser("triangulate", help="emit a triangulation as JSON")
    _add_source_flags(p)
    p.add_argument("--report")
    p.set_defaults(func=cmd_triangulate)

    for name, fn in [("analyze", cmd_analyze), ("pages", cmd_pages),
                     ("verify", cmd_verify)]:
        p = sub.add_parser(name)
        _add_source_flags(p)
        p.add_argument("--signs", default="harnack",
                       help="harnack | zero | seed:N | path")
        p.add_argument("--side", default="homology",
                       choices=["homology", "cohomology", "both"])
        p.add_argument("--report")
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep")
    _add_source_flags(p)
    p.add_argument("--random", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=cmd_sweep)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
