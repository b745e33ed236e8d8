import json
from math import comb

import pytest

from patchlab.polytope import (GeometryError, LatticePolytope, build_polytope,
                               cube, polytope_from_json, product, simplex)


class TestFamilies:
    def test_simplex_lattice_points(self):
        for n in (1, 2, 3):
            for d in (1, 2, 3):
                p = simplex(n, d)
                assert len(p.lattice_points()) == comb(n + d, n)

    def test_cube_lattice_points(self):
        for n in (1, 2, 3):
            for d in (1, 2):
                assert len(cube(n, d).lattice_points()) == (d + 1) ** n

    def test_product_vertices(self):
        p = product(simplex(1, 2), simplex(2, 1))
        assert p.dim == 3
        assert len(p.vertices) == 2 * 3

    def test_build_polytope_parses(self):
        assert build_polytope("simplex(2,3)").dim == 2
        assert build_polytope("cube(3,2)").dim == 3
        q = build_polytope("product(simplex(1,2),simplex(1,2))")
        assert q.dim == 2 and len(q.lattice_points()) == 9

    def test_smoothness(self):
        for fam in ("simplex(3,2)", "cube(2,3)",
                    "product(simplex(1,1),simplex(2,2))"):
            build_polytope(fam).smoothness_check()


class TestGeometry:
    def test_containment(self):
        p = cube(2, 3)
        assert p.contains((0, 0)) and p.contains((3, 3))
        assert not p.contains((4, 0)) and not p.contains((-1, 2))

    def test_faces_of_cube(self):
        p = cube(2, 1)
        dims = sorted(f.dim for f in p.faces)
        assert dims == [0, 0, 0, 0, 1, 1, 1, 1, 2]

    def test_smallest_face(self):
        p = cube(2, 2)
        assert p.smallest_face([(0, 0)]).dim == 0
        assert p.smallest_face([(1, 0)]).dim == 1
        assert p.smallest_face([(1, 1)]).dim == 2

    def test_sedentarity_dims(self):
        p = cube(2, 2)
        assert p.sedentarity([(0, 0)]).dim == 2      # corner
        assert p.sedentarity([(1, 0)]).dim == 1      # edge interior
        assert p.sedentarity([(1, 1)]).dim == 0      # interior

    def test_sedentarity_of_skew_facet(self):
        p = simplex(2, 1)
        f = p.smallest_face([(1, 0), (0, 1)])
        assert f.dim == 1 and p.sedentarity_of_face(f).dim == 1


class TestSerialization:
    def test_json_roundtrip(self):
        p = build_polytope("product(simplex(1,2),simplex(2,1))")
        q = polytope_from_json(json.loads(json.dumps(p.to_json())))
        assert q.dim == p.dim
        assert sorted(q.vertices) == sorted(p.vertices)
        assert q.family == p.family

    def test_bad_family(self):
        with pytest.raises(Exception):
            build_polytope("dodecahedron(5)")
