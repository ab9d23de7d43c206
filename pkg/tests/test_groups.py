import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemcodes.errors import BadParameters, GroupTooLarge, NotCyclic, NotNormal
from idemcodes.groups import (
    center,
    centralizer,
    commutator_subgroup,
    cyclic_group,
    dump_cayley,
    group_dicyclic,
    group_direct,
    group_from_table,
    group_metacyclic,
    is_cyclic,
    is_nilpotent,
    is_normal,
    load_cayley,
    minimal_prime_subgroups,
    normalizer,
    primary_decomposition,
    quotient,
    subgroups,
    transversal,
)


def naive_closure(G, gens):
    """Plain BFS closure written independently of the library."""
    S = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x][g])
                if y not in S:
                    S.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(S)


GROUPS = {
    "c6": lambda: cyclic_group(6),
    "c12": lambda: cyclic_group(12),
    "s3": lambda: group_metacyclic(3, 2, 2),
    "g21": lambda: group_metacyclic(7, 3, 2),
    "g27": lambda: group_metacyclic(9, 3, 4),
    "f20": lambda: group_metacyclic(5, 4, 2),
    "q8": lambda: group_dicyclic(2),
    "q12": lambda: group_dicyclic(3),
    "klein": lambda: group_direct(cyclic_group(2), cyclic_group(2)),
    "s3xc2": lambda: group_direct(group_metacyclic(3, 2, 2), cyclic_group(2)),
}


class TestConstruction:
    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_axioms(self, name):
        G = GROUPS[name]()
        assert G.check_axioms()
        assert all(G.mul(x, G.inverse(x)) == 0 for x in range(G.n))
        assert G.ordering == tuple(range(G.n))

    def test_metacyclic_relation(self):
        G = group_metacyclic(9, 3, 4)
        a, b = 1, 9
        assert G.n == 27
        assert G.mul(b, a) == G.mul(G.power(a, 4), b)
        assert G.element_order(a) == 9 and G.element_order(b) == 3
        # index j*m + i is a^i b^j
        assert G.mul(G.power(a, 2), G.power(b, 2)) == 2 * 9 + 2

    def test_metacyclic_trivial_action_is_cyclic(self):
        G = group_metacyclic(7, 1, 1)
        assert G.is_abelian and is_cyclic(G)[0]

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            group_metacyclic(7, 3, 3)  # 3^3 = 27 = 6 mod 7
        with pytest.raises(BadParameters):
            group_metacyclic(6, 2, 3)

    def test_direct(self):
        K = group_direct(cyclic_group(2), cyclic_group(2))
        assert K.n == 4 and K.exponent == 2
        G = group_direct(group_metacyclic(7, 3, 4), cyclic_group(5))
        assert G.n == 105 and not G.is_abelian
        A = group_metacyclic(5, 4, 2)
        AT = group_direct(A, cyclic_group(1))
        assert np.array_equal(AT.table, A.table)

    def test_dicyclic_q8(self):
        Q = group_dicyclic(2)
        assert sorted(Q.element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
        assert len(center(Q)) == 2

    def test_bad_cayley_table(self):
        with pytest.raises(BadParameters):
            group_from_table([[0, 1, 2], [1, 0, 0], [2, 0, 1]])

    def test_cayley_round_trip(self, tmp_path):
        G = group_metacyclic(5, 4, 2)
        path = tmp_path / "f20.txt"
        path.write_text("# Frobenius group\n" + dump_cayley(G))
        H = load_cayley(path)
        assert np.array_equal(H.table, G.table)
        assert len(subgroups(H)) == 14


class TestSubgroups:
    def test_counts(self):
        assert [S.order for S in subgroups(cyclic_group(6))] == [1, 2, 3, 6]
        q8 = subgroups(group_dicyclic(2))
        assert [S.order for S in q8] == [1, 2, 4, 4, 4, 8]
        assert len(subgroups(group_metacyclic(5, 4, 2))) == 14
        assert [S.elems for S in subgroups(cyclic_group(1))] == [(0,)]

    @pytest.mark.parametrize("name", ["f20", "q8", "s3", "g21", "klein", "q12"])
    def test_two_generator_oracle(self, name):
        # every subgroup of these groups is generated by at most two elements
        G = GROUPS[name]()
        oracle = {naive_closure(G, (g, h)) for g, h in itertools.combinations_with_replacement(range(G.n), 2)}
        assert {S.set for S in subgroups(G)} == oracle

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_closed_and_sorted(self, name):
        G = GROUPS[name]()
        subs = subgroups(G)
        assert all(S.is_closed() for S in subs)
        assert len({S.set for S in subs}) == len(subs)
        assert [S.sort_key() for S in subs] == sorted(S.sort_key() for S in subs)

    def test_too_large(self):
        with pytest.raises(GroupTooLarge):
            subgroups(cyclic_group(10), bound=5)


class TestCalculus:
    def test_normalizer_of_normal(self):
        G = group_metacyclic(7, 3, 2)
        A = G.generated(1)
        assert normalizer(G, A) == G.whole
        B = G.generated(7)
        assert normalizer(G, B) == B
        assert not is_normal(G, B)

    def test_derived_subgroups(self):
        G = group_metacyclic(9, 3, 4)
        assert commutator_subgroup(G) == G.generated(3)
        F = group_metacyclic(5, 4, 2)
        assert commutator_subgroup(F) == F.generated(1)

    def test_centralizer_and_center(self):
        G = group_metacyclic(9, 3, 4)
        Z = center(G)
        assert Z == G.generated(3)
        assert centralizer(G, G.whole) == Z
        assert centralizer(G, [1]) == G.generated(1)

    def test_nilpotency(self):
        assert is_nilpotent(group_metacyclic(9, 3, 4))
        assert is_nilpotent(group_dicyclic(2))
        assert not is_nilpotent(group_metacyclic(7, 3, 2))


class TestQuotients:
    def test_examples(self):
        G = group_metacyclic(9, 3, 4)
        assert quotient(G.whole, G.whole).quotient.n == 1
        C9 = cyclic_group(9)
        q = quotient(C9.whole, C9.generated(3))
        assert q.quotient.n == 3 and is_cyclic(q.quotient)[0]
        q = quotient(G.whole, G.generated(1))
        assert q.quotient.n == 3
        assert q.quotient.element_order(q(9)) == 3
        assert q.section == (0, 9, 18)

    def test_not_normal(self):
        G = group_metacyclic(7, 3, 2)
        with pytest.raises(NotNormal):
            quotient(G.whole, G.generated(7))

    @pytest.mark.parametrize("name", ["g27", "f20", "q8", "s3xc2"])
    def test_projection_homomorphism(self, name):
        G = GROUPS[name]()
        for K in subgroups(G):
            if not is_normal(G, K):
                continue
            q = quotient(G.whole, K)
            Q = q.quotient
            assert {x for x in range(G.n) if q(x) == 0} == K.set
            assert [q(s) for s in q.section] == list(range(Q.n))
            for x in range(G.n):
                for y in range(0, G.n, 3):
                    assert q(G.mul(x, y)) == Q.mul(q(x), q(y))


class TestTransversals:
    def test_examples(self):
        G = group_metacyclic(9, 3, 4)
        assert transversal(G, G.whole) == [0]
        assert transversal(G, G.generated(1)) == [0, 9, 18]

    @given(st.sampled_from(["g27", "f20", "q8", "s3xc2", "g21"]), st.data())
    def test_right_cosets_partition(self, name, data):
        G = GROUPS[name]()
        subs = subgroups(G)
        H = subs[data.draw(st.integers(0, len(subs) - 1))]
        T = transversal(G, H)
        assert T[0] == 0 and T == sorted(T)
        assert len(T) * len(H) == G.n
        cosets = [frozenset(G.mul(h, t) for h in H.elems) for t in T]
        assert len(set().union(*cosets)) == G.n
        assert all(min(c) == t for c, t in zip(cosets, T))


class TestDecompositions:
    def test_primary(self):
        P, R = primary_decomposition(cyclic_group(6))
        assert (P.order, R.order) == (2, 3)
        P, R = primary_decomposition(cyclic_group(12))
        assert (P.order, R.order) == (4, 3)
        P, R = primary_decomposition(cyclic_group(9))
        assert (P.order, R.order) == (1, 9)

    def test_minimal_prime_subgroups(self):
        assert [S.order for S in minimal_prime_subgroups(cyclic_group(6))] == [2, 3]
        assert [S.order for S in minimal_prime_subgroups(cyclic_group(7))] == [7]
        assert minimal_prime_subgroups(cyclic_group(1)) == []
        with pytest.raises(NotCyclic):
            minimal_prime_subgroups(group_direct(cyclic_group(2), cyclic_group(2)))

    def test_cyclic_witness(self):
        ok, g = is_cyclic(cyclic_group(10))
        assert ok and g == 1
        assert is_cyclic(group_dicyclic(2)) == (False, None)
