from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemcodes.algebra import (
    AlgElem,
    RatAlgElem,
    alg_arith,
    are_orthogonal,
    conjugate,
    is_central,
    is_idempotent,
    left_ideal_matrix,
    right_mult_matrix,
    tilde,
)
from idemcodes.errors import CharacteristicDividesOrder, ContextMismatch
from idemcodes.fields import get_field
from idemcodes.groups import cyclic_group, group_dicyclic, group_metacyclic, is_normal, subgroups

G20 = group_metacyclic(5, 4, 2)
Q8 = group_dicyclic(2)
F2, F3, F4 = get_field(2), get_field(3), get_field(2, 2)


def elems(G, F):
    return st.lists(st.integers(0, F.s - 1), min_size=G.n, max_size=G.n).map(lambda c: AlgElem(G, F, c))


def naive_product(a, b):
    G, F = a.group, a.field
    out = [0] * G.n
    for x in range(G.n):
        for y in range(G.n):
            z = G.mul(x, y)
            out[z] = F.add(out[z], F.mul(int(a.coeffs[x]), int(b.coeffs[y])))
    return out


class TestArithmetic:
    def test_identity_and_basis(self):
        c = AlgElem(G20, F3, [i % 3 for i in range(20)])
        one = AlgElem.one(G20, F3)
        assert one * c == c and c * one == c
        for g, h in [(1, 5), (5, 1), (7, 13)]:
            assert AlgElem.basis(G20, F3, g) * AlgElem.basis(G20, F3, h) == AlgElem.basis(G20, F3, G20.mul(g, h))

    def test_char_two_square(self):
        C2 = cyclic_group(2)
        x = AlgElem(C2, F2, [1, 1])
        assert (x * x).is_zero()

    def test_alg_arith_ops(self):
        C3 = cyclic_group(3)
        a = AlgElem(C3, F3, [1, 2, 0])
        b = AlgElem(C3, F3, [0, 1, 1])
        assert alg_arith(a, b, "add") == AlgElem(C3, F3, [1, 0, 1])
        assert alg_arith(a, b, "sub") == AlgElem(C3, F3, [1, 1, 2])
        assert alg_arith(a, 2, "scalar_mul") == AlgElem(C3, F3, [2, 1, 0])
        with pytest.raises(ValueError):
            alg_arith(a, b, "pow")

    def test_mismatch(self):
        with pytest.raises(ContextMismatch):
            AlgElem.one(G20, F3) + AlgElem.one(G20, get_field(5))
        with pytest.raises(ContextMismatch):
            AlgElem.one(G20, F3) * AlgElem.one(Q8, F3)

    @given(elems(G20, F4), elems(G20, F4))
    def test_product_matches_naive(self, a, b):
        assert list((a * b).coeffs) == naive_product(a, b)

    @given(elems(Q8, F3), elems(Q8, F3), elems(Q8, F3))
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a - a == AlgElem.zero(Q8, F3)

    @given(elems(G20, F3), elems(G20, F3))
    def test_support_of_product(self, a, b):
        prod = {G20.mul(x, y) for x in a.support() for y in b.support()}
        assert set((a * b).support()) <= prod

    @given(elems(G20, F3), st.integers(0, 19))
    def test_basis_shortcuts(self, a, g):
        bg = AlgElem.basis(G20, F3, g)
        assert a.left_mul_basis(g) == bg * a
        assert a.right_mul_basis(g) == a * bg
        assert a.conjugate(g) == AlgElem.basis(G20, F3, G20.inverse(g)) * a * bg


class TestTilde:
    def test_trivial(self):
        assert tilde(G20.trivial, F3) == AlgElem.one(G20, F3)

    def test_c3_over_f2(self):
        C3 = cyclic_group(3)
        assert tilde(C3.whole, F2) == AlgElem(C3, F2, [1, 1, 1])

    def test_rational_whole_group(self):
        t = tilde(G20.whole)
        assert t.coeffs == (Fraction(1, 20),) * 20

    def test_characteristic_divides(self):
        with pytest.raises(CharacteristicDividesOrder):
            tilde(G20.whole, F2)

    def test_bare_set(self):
        with pytest.raises(ValueError):
            tilde([0, 1])
        assert tilde([0, 5], F3, group=G20) == AlgElem.from_terms(G20, F3, [(0, 2), (5, 2)])

    @pytest.mark.parametrize("G", [G20, Q8], ids=["f20", "q8"])
    def test_absorption(self, G):
        F = get_field(3) if G is G20 else get_field(5)
        for H in subgroups(G):
            if len(H) % F.p == 0:
                continue
            t = tilde(H, F)
            assert is_idempotent(t)
            for h in H.elems:
                assert t.right_mul_basis(h) == t
            for K in subgroups(G):
                if K <= H and is_normal(G, K, within=H):
                    assert t * tilde(K, F) == t

    def test_conjugate_of_tilde(self):
        H = G20.generated(5)
        for g in range(G20.n):
            assert conjugate(tilde(H, F3), g) == tilde(H.conjugate(g), F3)


class TestPredicates:
    def test_zero_and_one(self):
        z, o = AlgElem.zero(G20, F3), AlgElem.one(G20, F3)
        assert is_idempotent(z) and is_idempotent(o)
        assert are_orthogonal(z, o)
        assert not are_orthogonal(o, o)

    def test_epsilon_c6(self):
        C6 = cyclic_group(6)
        M2, M3 = C6.generated(3), C6.generated(2)
        one = RatAlgElem.one(C6)
        eps = (one - tilde(M2)) * (one - tilde(M3))
        assert is_idempotent(eps) and is_central(eps)
        assert eps * tilde(C6.whole) == RatAlgElem.zero(C6)

    def test_centrality(self):
        assert is_central(tilde(G20.whole, F3))
        assert not is_central(tilde(G20.generated(5), F3))

    def test_conjugation_involution(self):
        c = AlgElem(G20, F3, [(i * i) % 3 for i in range(20)])
        for g in range(20):
            assert conjugate(conjugate(c, g), G20.inverse(g)) == c
        assert conjugate(c, 0) == c

    def test_rational_reduce(self):
        t = tilde(G20.generated(1))
        assert t.reduce(F3) == tilde(G20.generated(1), F3)
        with pytest.raises(CharacteristicDividesOrder):
            tilde(G20.whole).reduce(F2)


class TestMatrices:
    @given(elems(G20, F3))
    def test_left_ideal_matches_right_mult(self, e):
        import numpy as np

        L = left_ideal_matrix(e)
        R = right_mult_matrix(e)
        # row g of L is g*e, which is row g of the x -> x*e matrix
        assert np.array_equal(L, R)


def test_format():
    C3 = cyclic_group(3)
    assert AlgElem(C3, F3, [1, 0, 2]).format() == "1*1+2*a^2"
    assert AlgElem.zero(C3, F3).format() == "0"
