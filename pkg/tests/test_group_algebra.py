import itertools
from math import comb

from hypothesis import given, settings
from hypothesis import strategies as st

from patchlab import group_algebra as ga
from patchlab.f2_linalg import F2Matrix

elements = st.integers(0, (1 << 8) - 1)       # F2[V] with m = 3


class TestAlgebra:
    @given(elements, elements)
    @settings(max_examples=30, deadline=None)
    def test_multiply_commutes(self, a, b):
        assert ga.multiply(a, b, 3) == ga.multiply(b, a, 3)

    @given(elements, elements, elements)
    @settings(max_examples=30, deadline=None)
    def test_multiply_associates(self, a, b, c):
        lhs = ga.multiply(ga.multiply(a, b, 3), c, 3)
        rhs = ga.multiply(a, ga.multiply(b, c, 3), 3)
        assert lhs == rhs

    @given(elements)
    @settings(max_examples=20, deadline=None)
    def test_unit(self, a):
        assert ga.multiply(1, a, 3) == a     # 1 = x^0

    def test_subspace_indicator_is_product_of_binomials(self):
        m = 3
        basis = [0b001, 0b110]
        prod = 1
        for v in basis:
            prod = ga.multiply(prod, 1 | 1 << v, m)
        assert prod == ga.subspace_indicator(basis, m)


class TestFiltration:
    def test_dimension_formula(self):
        for m in range(5):
            for k in range(m + 2):
                want = sum(comb(m, j) for j in range(k, m + 1))
                assert ga.aug_power_basis(m, k).dim == want

    def test_decreasing(self):
        m = 4
        for k in range(m + 1):
            assert ga.aug_power_basis(m, k + 1) <= ga.aug_power_basis(m, k)

    def test_products_deepen(self):
        m = 3
        mk = ga.aug_power_basis(m, 1)
        m2 = ga.aug_power_basis(m, 2)
        for i in range(mk.dim):
            for j in range(mk.dim):
                prod = ga.multiply(mk.mat.row_int(i), mk.mat.row_int(j), m)
                assert m2.contains_matrix(F2Matrix.from_ints([prod], 1 << m))


class TestEta:
    def test_roundtrip(self):
        m, k = 4, 2
        for j in range(comb(m, k)):
            w = F2Matrix.zeros(1, comb(m, k))
            w.set(0, j, 1)
            lifted = ga.eta(m, k, w)
            assert ga.eta_inverse(m, k, lifted) == w

    def test_multiplicative_on_disjoint_wedges(self):
        m = 4
        subs1 = list(itertools.combinations(range(m), 1))
        for i, s in enumerate(subs1):
            for j, t in enumerate(subs1):
                a = F2Matrix.zeros(1, m)
                a.set(0, i, 1)
                b = F2Matrix.zeros(1, m)
                b.set(0, j, 1)
                prod = ga.multiply(ga.eta(m, 1, a), ga.eta(m, 1, b), m)
                if s == t:
                    assert prod == 0
                else:
                    pair = tuple(sorted(s + t))
                    idx = list(itertools.combinations(range(m), 2)).index(pair)
                    w = F2Matrix.zeros(1, comb(m, 2))
                    w.set(0, idx, 1)
                    assert prod == ga.eta(m, 2, w)


class TestFunctions:
    def test_degree_of_monomials(self):
        m = 3
        for k in range(m + 1):
            for t in itertools.combinations(range(m), k):
                assert ga.degree(ga.monomial_function(t, m), m) == k

    def test_degree_filtration_contains_products(self):
        m = 3
        o1 = ga.degree_filtration(m, 1)
        for i in range(o1.dim):
            for j in range(o1.dim):
                prod = o1.mat.row_int(i) & o1.mat.row_int(j)
                assert ga.degree(prod, m) <= 2

    def test_pairing_and_contraction(self):
        m = 3
        f = ga.monomial_function((0, 1), m)
        p = ga.subspace_indicator([0b011, 0b100], m)
        assert ga.pairing(f, p) == bin(ga.contract(f, p)).count("1") & 1
