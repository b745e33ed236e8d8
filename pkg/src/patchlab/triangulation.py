"""Primitive triangulations: validation, the recursive family V(n,d),
joins, staircase products, tangent wedges and sign distributions.

Vertices are kept in global lexicographic order; simplices are sorted
index tuples, so every construction is deterministic.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache

from . import intmat
from .f2_linalg import F2Matrix, Subspace
from .polytope import (GeometryError, LatticePolytope, build_polytope,
                       polytope_from_json, product, simplex)


class TriangulationError(ValueError):
    pass


def det(m: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss, fraction-free)."""
    a = [row[:] for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class Triangulation:
    """A triangulation of a lattice polytope with all faces enumerated."""

    def __init__(self, polytope: LatticePolytope, points, maximal):
        self.polytope = polytope
        order = sorted(range(len(points)), key=lambda i: tuple(points[i]))
        remap = {old: new for new, old in enumerate(order)}
        self.points = tuple(tuple(int(x) for x in points[i]) for i in order)
        self.maximal = tuple(sorted(tuple(sorted(remap[i] for i in s))
                                    for s in maximal))
        self.n = polytope.dim
        # derive the full simplex poset
        seen: set[tuple[int, ...]] = set()
        for s in self.maximal:
            for k in range(1, len(s) + 1):
                for sub in itertools.combinations(s, k):
                    seen.add(sub)
        self.simplex_list = sorted(seen, key=lambda s: (len(s), s))
        self.simplex_ids = {s: i for i, s in enumerate(self.simplex_list)}
        self._by_dim: dict[int, list[tuple[int, ...]]] = {}
        for s in self.simplex_list:
            self._by_dim.setdefault(len(s) - 1, []).append(s)
        self._sed_cache: dict[tuple[int, ...], Subspace] = {}
        self._omega_cache: dict[tuple[int, ...], F2Matrix] = {}

    def simplices(self, dim: int) -> list[tuple[int, ...]]:
        return self._by_dim.get(dim, [])

    @property
    def dims(self) -> list[int]:
        return sorted(self._by_dim)

    def coords(self, s: tuple[int, ...]) -> list[tuple[int, ...]]:
        return [self.points[i] for i in s]

    def edge_vector_mod2(self, a: int, b: int) -> F2Matrix:
        """Primitive edge direction reduced mod 2, as a dual row vector."""
        d = [x - y for x, y in zip(self.points[b], self.points[a])]
        d = intmat.primitive_vector(d)
        return F2Matrix.from_lists([[x % 2 for x in d]], self.n)

    def sed(self, s: tuple[int, ...]) -> Subspace:
        if s not in self._sed_cache:
            self._sed_cache[s] = self.polytope.sedentarity(self.coords(s))
        return self._sed_cache[s]

    def omega(self, s: tuple[int, ...]) -> F2Matrix:
        """Wedge covector of the simplex: generator of the top exterior
        power of its saturated mod-2 tangent space, as a row over the
        p-subsets of coordinates (sorted subset order)."""
        if s in self._omega_cache:
            return self._omega_cache[s]
        p = len(s) - 1
        v0 = self.points[s[0]]
        diffs = [[a - b for a, b in zip(self.points[i], v0)] for i in s[1:]]
        if p > 0:
            snf, _ = intmat._smith_reduce(diffs)
            invariants = [snf[i][i] for i in range(p)]
            if any(abs(x) != 1 for x in invariants):
                raise TriangulationError(f"simplex {s} is not primitive")
        subsets = list(itertools.combinations(range(self.n), p))
        row = F2Matrix.zeros(1, len(subsets))
        for j, sub in enumerate(subsets):
            if p == 0:
                row.set(0, j, 1)
                continue
            minor = [[diffs[i][c] % 2 for c in sub] for i in range(p)]
            if F2Matrix.from_lists(minor, p).rank() == p:
                row.set(0, j, 1)
        self._omega_cache[s] = row
        return row

    # -- validation ---------------------------------------------------

    def validate(self) -> tuple[bool, list[str]]:
        problems: list[str] = []
        n = self.n
        for i, p in enumerate(self.points):
            if not self.polytope.contains(p):
                problems.append(f"vertex {i} outside polytope")
        vol = 0
        for s in self.maximal:
            if len(s) != n + 1:
                problems.append(f"maximal simplex {s} has wrong dimension")
                continue
            v0 = self.points[s[0]]
            diffs = [[a - b for a, b in zip(self.points[i], v0)] for i in s[1:]]
            d = abs(det(diffs))
            if d != 1:
                problems.append(f"simplex {s} has normalized volume {d}")
            vol += d
        if self.polytope.normalized_volume is not None \
                and vol != self.polytope.normalized_volume:
            problems.append(f"covering failure: volume {vol} != "
                            f"{self.polytope.normalized_volume}")
        # facet pairing: interior facets shared exactly twice, boundary
        # facets supported on the polytope boundary
        count: dict[tuple[int, ...], int] = {}
        for s in self.maximal:
            for f in itertools.combinations(s, n):
                count[f] = count.get(f, 0) + 1
        for f, c in count.items():
            if c > 2:
                problems.append(f"facet {f} shared by {c} maximal simplices")
            elif c == 1:
                tight = frozenset(range(len(self.polytope.inequalities)))
                for i in f:
                    tight &= self.polytope.tight_set(self.points[i])
                if not tight:
                    problems.append(f"boundary facet {f} not on the boundary")
        used = set(itertools.chain.from_iterable(self.maximal))
        if used != set(range(len(self.points))):
            problems.append("unused vertices present")
        return (not problems), problems

    # -- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {"dim": self.n,
                "vertices": [list(p) for p in self.points],
                "maximal_simplices": [list(s) for s in self.maximal],
                "polytope": self.polytope.to_json()}

    def __repr__(self) -> str:
        return (f"Triangulation({self.polytope.family}, "
                f"{len(self.maximal)} maximal)")


def triangulation_from_json(doc: dict) -> Triangulation:
    p = polytope_from_json(doc["polytope"])
    t = Triangulation(p, [tuple(v) for v in doc["vertices"]],
                      [tuple(s) for s in doc["maximal_simplices"]])
    ok, problems = t.validate()
    if not ok:
        raise TriangulationError("; ".join(problems))
    return t


def load_triangulation(path: str) -> Triangulation:
    with open(path) as fh:
        return triangulation_from_json(json.load(fh))


def dump_triangulation(t: Triangulation, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(t.to_json(), fh, sort_keys=True)
        fh.write("\n")


# -- the recursive family ---------------------------------------------

def trivial(n: int) -> Triangulation:
    p = simplex(n, 1)
    return Triangulation(p, list(p.vertices), [tuple(range(n + 1))])


def segments(d: int) -> Triangulation:
    p = simplex(1, d)
    pts = [(i,) for i in range(d + 1)]
    return Triangulation(p, pts, [(i, i + 1) for i in range(d)])


def plus(k: Triangulation, l: Triangulation) -> Triangulation:
    """The glued triangulation of the next-degree simplex: k on the top
    slab, joins with l over the bottom prism."""
    n = k.n
    if l.n != n - 1:
        raise TriangulationError("dimension mismatch in plus()")
    d = max(sum(p) for p in k.points)
    dl = max(sum(p) for p in l.points)
    if dl != d + 1:
        raise TriangulationError("degree mismatch in plus()")
    target = simplex(n, d + 1)
    maximal_coords: list[tuple[tuple[int, ...], ...]] = []
    # top slab: k translated by e_n
    for s in k.maximal:
        maximal_coords.append(tuple(tuple(c + (1 if j == n - 1 else 0)
                                          for j, c in enumerate(p))
                                    for p in k.coords(s)))
    # bottom prism: joins over the interface faces
    emb = lambda q: tuple(q) + (0,)

    def k_face(i):  # translated-k face [u_0 .. u_i]
        def member(p):
            return p[n - 1] == 1 and all(p[j] == 0 for j in range(i, n - 1))
        return member

    def l_face(i):  # bottom face [w_i .. w_{n-1}]
        def member(q):
            if any(q[j] != 0 for j in range(i - 1)):
                return False
            return i == 0 or sum(q) == d + 1
        return member

    for i in range(n):
        mk = k_face(i)
        ktops = [s for s in k.simplex_list if len(s) == i + 1
                 and all(mk(tuple(c + (1 if j == n - 1 else 0)
                                  for j, c in enumerate(p)))
                         for p in k.coords(s))]
        ml = l_face(i)
        ltops = [s for s in l.simplex_list if len(s) == n - i
                 and all(ml(p) for p in l.coords(s))]
        for s in ktops:
            scoords = [tuple(c + (1 if j == n - 1 else 0)
                             for j, c in enumerate(p)) for p in k.coords(s)]
            for t in ltops:
                tcoords = [emb(p) for p in l.coords(t)]
                maximal_coords.append(tuple(scoords + tcoords))
    points = target.lattice_points()
    index = {p: i for i, p in enumerate(points)}
    maximal = [tuple(index[p] for p in s) for s in maximal_coords]
    return Triangulation(target, points, maximal)


@lru_cache(maxsize=None)
def viro(n: int, d: int) -> Triangulation:
    """The recursive primitive triangulation of the dilated simplex."""
    if n < 1 or d < 1:
        raise TriangulationError("need n >= 1 and d >= 1")
    if d == 1:
        return trivial(n)
    if n == 1:
        return segments(d)
    return plus(viro(n, d - 1), viro(n - 1, d))


def product_triangulation(k1: Triangulation, k2: Triangulation) -> Triangulation:
    """Order-induced staircase triangulation of the product."""
    target = product(k1.polytope, k2.polytope)
    points = sorted(p + q for p in k1.points for q in k2.points)
    index = {p: i for i, p in enumerate(points)}
    maximal = []
    n1 = k1.n
    n2 = k2.n
    for s in k1.maximal:
        sc = k1.coords(s)
        for t in k2.maximal:
            tc = k2.coords(t)
            for path in _monotone_paths(n1, n2):
                maximal.append(tuple(index[sc[i] + tc[j]] for i, j in path))
    return Triangulation(target, points, maximal)


def _monotone_paths(a: int, b: int):
    """All monotone lattice paths (0,0) -> (a,b) as vertex sequences."""
    for updown in itertools.combinations(range(a + b), a):
        path = [(0, 0)]
        x = y = 0
        for step in range(a + b):
            if step in updown:
                x += 1
            else:
                y += 1
            path.append((x, y))
        yield path


def triangulate_family(p: LatticePolytope) -> Triangulation:
    """Built-in primitive triangulation for each polytope family."""
    fam = p.family
    if fam.startswith("simplex("):
        n, d = map(int, fam[len("simplex("):-1].split(","))
        return viro(n, d)
    if fam.startswith("cube("):
        n, d = map(int, fam[len("cube("):-1].split(","))
        t = segments(d) if d > 1 else trivial(1)
        for _ in range(n - 1):
            t = product_triangulation(t, segments(d) if d > 1 else trivial(1))
        return t
    if fam.startswith("product("):
        depth = 0
        inner = fam[len("product("):-1]
        for pos, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                left, right = inner[:pos], inner[pos + 1:]
                return product_triangulation(
                    triangulate_family(build_polytope(left)),
                    triangulate_family(build_polytope(right)))
        raise TriangulationError(f"cannot split product family {fam!r}")
    raise TriangulationError(f"no built-in triangulation for {fam!r}")


# -- sign distributions -----------------------------------------------

_M64 = (1 << 64) - 1


def splitmix64_stream(seed: int):
    state = seed & _M64
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _M64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        z ^= z >> 31
        yield z


class SignDistribution:
    """A total assignment of signs (F2 values) to triangulation vertices."""

    def __init__(self, triangulation: Triangulation, values):
        if len(values) != len(triangulation.points):
            raise TriangulationError("sign distribution not total")
        self.triangulation = triangulation
        self.values = tuple(int(v) & 1 for v in values)

    @classmethod
    def zero(cls, t: Triangulation) -> "SignDistribution":
        return cls(t, [0] * len(t.points))

    @classmethod
    def harnack(cls, t: Triangulation) -> "SignDistribution":
        vals = []
        for p in t.points:
            prod = 1
            for c in p:
                prod *= c % 2
            vals.append(prod)
        return cls(t, vals)

    @classmethod
    def from_seed(cls, t: Triangulation, seed: int) -> "SignDistribution":
        stream = splitmix64_stream(seed)
        return cls(t, [next(stream) & 1 for _ in t.points])

    @classmethod
    def from_json(cls, t: Triangulation, doc: dict) -> "SignDistribution":
        if "signs" in doc:
            return cls(t, doc["signs"])
        if "random_seed" in doc:
            return cls.from_seed(t, int(doc["random_seed"]))
        raise TriangulationError("sign JSON needs 'signs' or 'random_seed'")

    def to_json(self) -> dict:
        return {"signs": list(self.values)}

    def d_edge(self, a: int, b: int) -> int:
        """Coboundary of the sign cochain on the edge (a, b)."""
        return self.values[a] ^ self.values[b]
