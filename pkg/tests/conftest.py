import json
import os

import pytest

from patchlab.patchwork import RealLift
from patchlab.polytope import build_polytope
from patchlab.triangulation import (SignDistribution, load_triangulation,
                                    triangulate_family, viro)

DATA = os.path.join(os.path.dirname(__file__), "data")

_TRI_CACHE: dict = {}
_LIFT_CACHE: dict = {}


def triangulation_for(spec: str):
    """Shared triangulations: 'viro(n,d)' or any polytope family string."""
    if spec not in _TRI_CACHE:
        if spec.startswith("viro("):
            n, d = map(int, spec[5:-1].split(","))
            _TRI_CACHE[spec] = viro(n, d)
        elif spec == "fig_torus":
            _TRI_CACHE[spec] = load_triangulation(
                os.path.join(DATA, "fig_torus.json"))
        else:
            _TRI_CACHE[spec] = triangulate_family(build_polytope(spec))
    return _TRI_CACHE[spec]


def lift_for(spec: str) -> RealLift:
    """Real lifts are expensive and sign-independent; share them."""
    if spec not in _LIFT_CACHE:
        _LIFT_CACHE[spec] = RealLift(triangulation_for(spec))
    return _LIFT_CACHE[spec]


def torus_signs() -> SignDistribution:
    with open(os.path.join(DATA, "fig_torus_signs.json")) as fh:
        return SignDistribution.from_json(triangulation_for("fig_torus"),
                                          json.load(fh))


@pytest.fixture
def tmp_report(tmp_path):
    return str(tmp_path / "report.json")
