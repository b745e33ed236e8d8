"""The group algebra F2[V] of V = F2^m, its augmentation-ideal filtration,
the function algebra O(V) with the polynomial-degree filtration, the
exterior-algebra isomorphism on graded pieces, and contraction.

Elements of F2[V] and functions on V are both stored as Python ints over
the 2^m points of V: bit v of an algebra element is the coefficient of
x^v, bit v of a function is its value at v.  Contraction f.P is then a
bitwise AND, and the pairing <f;P> the parity of the AND.
"""

from __future__ import annotations

import itertools

from .f2_linalg import F2Matrix, Subspace


def multiply(a: int, b: int, m: int) -> int:
    """Product in F2[V]: convolution over the group law (xor)."""
    out = 0
    for v in range(1 << m):
        if a >> v & 1:
            for w in range(1 << m):
                if b >> w & 1:
                    out ^= 1 << (v ^ w)
    return out


def subspace_indicator(span_of: list[int], m: int) -> int:
    """Indicator of the F2-span of the given points, as an algebra element.

    Equals the product of (1 + x^v) over any basis of the span.
    """
    members = {0}
    for v in span_of:
        members |= {w ^ v for w in members}
    out = 0
    for w in members:
        out |= 1 << w
    return out


def aug_power_basis(m: int, k: int) -> Subspace:
    """The k-th power of the augmentation ideal, as a subspace of F2[V].

    Spanned by the products prod_{i in S}(1 + x^{e_i}) over subsets S of
    the standard basis with |S| >= k, i.e. by the indicators of the
    coordinate subspaces of dimension >= k.
    """
    if not 0 <= k <= m + 1:
        raise ValueError("grade out of range")
    gens = []
    for j in range(k, m + 1):
        for s in itertools.combinations(range(m), j):
            gens.append(subspace_indicator([1 << i for i in s], m))
    if not gens:
        return Subspace.zero(1 << m)
    return Subspace.span(F2Matrix.from_ints(gens, 1 << m))


def eta(m: int, k: int, wedge: F2Matrix) -> int:
    """Lift of a k-wedge (row over sorted k-subsets of the basis of V) to
    a representative of its coset in m^k/m^{k+1}."""
    out = 0
    for j, s in enumerate(itertools.combinations(range(m), k)):
        if wedge.get(0, j):
            out ^= subspace_indicator([1 << i for i in s], m)
    return out


def eta_inverse(m: int, k: int, elem: int) -> F2Matrix:
    """Coordinates in Lambda^k V of an element of m^k modulo m^{k+1}."""
    subs = list(itertools.combinations(range(m), k))
    gens = [subspace_indicator([1 << i for i in s], m) for s in subs]
    lower = aug_power_basis(m, k + 1)
    rows = F2Matrix.from_ints(gens, 1 << m)
    full = F2Matrix.stack([rows, lower.mat])
    sol = full.solve_left(F2Matrix.from_ints([elem], 1 << m))
    if sol is None:
        raise ValueError("element is not in m^k")
    return sol.cols_range(0, len(subs))


def contract(f: int, p: int) -> int:
    """f.P = sum over v of f(v) p_v x^v."""
    return f & p


def pairing(f: int, p: int) -> int:
    """<f;P> = sum over v of f(v) p_v."""
    return bin(f & p).count("1") & 1


def monomial_function(t: tuple[int, ...], m: int) -> int:
    """Truth table of the monomial prod_{i in t} v_i."""
    out = 0
    mask = 0
    for i in t:
        mask |= 1 << i
    for v in range(1 << m):
        if v & mask == mask:
            out |= 1 << v
    return out


def degree_filtration(m: int, k: int) -> Subspace:
    """Functions of polynomial degree at most k, as a subspace of O(V)."""
    if not 0 <= k <= m:
        raise ValueError("grade out of range")
    gens = []
    for j in range(k + 1):
        for t in itertools.combinations(range(m), j):
            gens.append(monomial_function(t, m))
    return Subspace.span(F2Matrix.from_ints(gens, 1 << m))


def degree(f: int, m: int) -> int:
    """Polynomial degree of a function, by Moebius inversion over the
    subset lattice; the zero function gets -1 (below every grade)."""
    if f == 0:
        return -1
    best = -1
    for t_mask in range(1 << m):
        c = 0
        u = t_mask
        while True:
            c ^= f >> u & 1
            if u == 0:
                break
            u = (u - 1) & t_mask
        if c:
            best = max(best, bin(t_mask).count("1"))
    return best
