import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemcodes.algebra import AlgElem, right_mult_matrix, tilde
from idemcodes.codes import (
    LinearCode,
    analyse,
    code_from_idempotent,
    code_search,
    expand_to_prime_field,
    export_generator_matrix,
    minimum_distance,
    weight_distribution,
)
from idemcodes.errors import BudgetExceeded, CoefficientsNotInBaseField
from idemcodes.fields import get_field
from idemcodes.groups import cyclic_group, group_metacyclic
from idemcodes.idempotents import primitive_idempotents, primitive_idempotents_trivial_twisting
from idemcodes.linalg import in_row_space, rank_np, rref
from idemcodes.shoda import components, make_pair, strong_shoda_pairs


def code_of_rows(F, rows):
    R, piv = rref(F, np.array(rows, dtype=np.int64))
    return LinearCode(F, len(rows[0]), R, tuple(piv))


def brute_weights(c):
    F = c.field
    hist = [0] * (c.n + 1)
    for msg in itertools.product(range(F.s), repeat=c.k):
        w = np.zeros(c.n, dtype=np.int64)
        for a, row in zip(msg, c.genmat):
            w = F.add_table[w, F.mul_table[a, row]]
        hist[int(np.count_nonzero(w))] += 1
    return hist


def random_code(F, k, n, draw):
    rows = [[draw(st.integers(0, F.s - 1)) for _ in range(n)] for _ in range(k)]
    return code_of_rows(F, rows)


class TestFromIdempotent:
    def test_identity(self, g20, F3):
        c = code_from_idempotent(g20, AlgElem.one(g20, F3))
        assert (c.n, c.k) == (20, 20)
        with pytest.raises(BudgetExceeded) as info:
            minimum_distance(c)
        assert info.value.upper_bound == 1
        C4 = cyclic_group(4)
        small = code_from_idempotent(C4, AlgElem.one(C4, F3))
        assert small.k == 4 and minimum_distance(small) == 1

    def test_repetition(self, g20, F3):
        c = code_from_idempotent(g20, tilde(g20.whole, F3))
        assert c.k == 1
        assert minimum_distance(c) == 20
        assert c.genmat.tolist() == [[1] * 20]

    def test_zero(self, g20, F3):
        c = code_from_idempotent(g20, AlgElem.zero(g20, F3))
        assert c.k == 0
        assert weight_distribution(c) == [1] + [0] * 20
        with pytest.raises(ValueError):
            minimum_distance(c)

    def test_base_field_guard(self, g20, F3):
        with pytest.raises(CoefficientsNotInBaseField):
            code_from_idempotent(g20, AlgElem.one(g20, F3), base=get_field(3, 2))

    def test_ordering(self, g20, F3):
        e = tilde(g20.generated(5), F3)
        order = list(reversed(range(20)))
        c = code_from_idempotent(g20, e, ordering=order)
        c0 = code_from_idempotent(g20, e)
        assert c.k == c0.k
        assert c.provenance["ordering_hash"] != c0.provenance["ordering_hash"]
        with pytest.raises(ValueError):
            code_from_idempotent(g20, e, ordering=[0] * 20)

    @pytest.mark.parametrize("name,pk", [("order21", (2, 1)), ("frobenius20", (3, 1)), ("q8", (3, 1)), ("order55", (2, 2))])
    def test_rank_oracle_and_closure(self, name, pk):
        from conftest import fixture_group

        G, F = fixture_group(name), get_field(*pk)
        for comp in components(G, F):
            ps = primitive_idempotents(G, comp.pair, comp.cls, F)
            ideal_rows = []
            for e in ps.idems:
                c = code_from_idempotent(G, e)
                assert c.k == rank_np(F, right_mult_matrix(e)) == comp.left_ideal_dim
                for g in G.gens:
                    for row in c.genmat:
                        v = AlgElem(G, F, row).left_mul_basis(g).coeffs
                        assert in_row_space(F, c.genmat, list(c.pivots), v)
                ideal_rows.append(c.genmat)
            assert rank_np(F, np.vstack(ideal_rows)) == comp.component_dim


class TestWeights:
    def test_examples(self):
        F2 = get_field(2)
        rep = code_of_rows(F2, [[1, 1, 1]])
        assert weight_distribution(rep) == [1, 0, 0, 1]
        full = code_of_rows(F2, [[1, 0], [0, 1]])
        assert weight_distribution(full) == [1, 2, 1]
        assert minimum_distance(rep) == 3

    @given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.integers(1, 4), st.integers(1, 9), st.data())
    def test_brute_force_oracle(self, pk, k, n, data):
        F = get_field(*pk)
        c = random_code(F, k, n, data.draw)
        w = weight_distribution(c)
        assert w == brute_weights(c)
        assert sum(w) == F.s**c.k and w[0] == 1
        if c.k:
            assert c.d == min(i for i in range(1, n + 1) if w[i])

    @given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.integers(1, 12), st.data())
    def test_methods_and_threads_agree(self, pk, k, data):
        F = get_field(*pk)
        k = min(k, 5 if F.s > 2 else 10)
        c = random_code(F, k, 24, data.draw)
        ref = weight_distribution(c, method="exhaustive")
        assert weight_distribution(c, method="gray") == ref
        assert weight_distribution(c, method="gray", threads=3) == ref
        assert weight_distribution(c, method="exhaustive", threads=4) == ref

    def test_large_split(self):
        # k = 18 over F_2 exercises the outer offsets beyond the inner block
        rng = np.random.default_rng(7)
        F = get_field(2)
        c = code_of_rows(F, rng.integers(0, 2, size=(18, 30)).tolist())
        a = weight_distribution(c, method="gray", threads=2)
        b = weight_distribution(c, method="exhaustive")
        assert a == b and sum(a) == 2**c.k

    def test_unknown_method(self):
        c = code_of_rows(get_field(2), [[1, 1]])
        with pytest.raises(ValueError):
            weight_distribution(c, method="random")


class TestBudget:
    def test_budget_exceeded(self, g105, F2):
        pair = next(P for P in strong_shoda_pairs(g105, F2) if P.index == 3 and P.m == 35)
        ps = primitive_idempotents_trivial_twisting(g105, pair, pair.classes()[0], F2)
        c = code_from_idempotent(g105, ps.idems[0])
        with pytest.raises(BudgetExceeded) as info:
            minimum_distance(c, budget=2**10)
        assert info.value.upper_bound >= minimum_distance(c)

    def test_analyse_flags_bound(self):
        c = code_of_rows(get_field(2), np.eye(12, 20, dtype=np.int64).tolist())
        analyse(c, budget=16)
        assert c.d_is_bound and c.d == 1 and c.weights is None
        assert repr(c) == "[20,12,<=1] code over GF(2)"


class TestExport:
    def test_prime_field(self):
        c = code_of_rows(get_field(3), [[1, 2, 0], [0, 1, 1]])
        assert export_generator_matrix(c) == "3 2 3\n1 0 1\n0 1 1\n"

    def test_extension_field(self):
        F4 = get_field(2, 2)
        c = code_of_rows(F4, [[1, 2, 3]])
        assert export_generator_matrix(c) == "3 1 4\n10 01 11\n"
        img = expand_to_prime_field(c)
        assert img.shape == (2, 6)
        assert rank_np(get_field(2), img) == 2


class TestSearch:
    def test_order21(self, g21, F2):
        rep = code_search(g21, F2)
        assert rep.has(3, 12)
        assert rep.supported

    def test_order55(self, g55, F2):
        assert code_search(g55, F2).has(10, 20)

    def test_quaternion(self, q8, F3):
        rep = code_search(q8, F3)
        assert rep.has(2, 6)
        assert any(r.construction == "nilpotent" for r in rep.results)

    def test_order105(self, g105, F2):
        rep = code_search(g105, F2)
        assert rep.best()[3] == 60

    def test_frobenius_two_distances(self, g20, F3):
        pair = make_pair(g20, g20.generated(1), g20.trivial, F3)
        rep = code_search(g20, F3, pairs=[pair], normal_elements=None)
        ds = {c.d for r in rep.results for c in r.codes if c.k == 4}
        assert {8, 12} <= ds

    def test_sorted_within_component(self, g20, F3):
        rep = code_search(g20, F3, normal_elements=3)
        for r in rep.results:
            keys = [(c.k, -c.d) for c in r.codes]
            assert keys == sorted(keys)

    def test_strategies(self, g21, F2):
        a = code_search(g21, F2, strategy="all_components")
        b = code_search(g21, F2, strategy="all_idempotents")
        assert len(a.all_codes()) <= len(b.all_codes())
        with pytest.raises(ValueError):
            code_search(g21, F2, strategy="random")

    def test_unsupported_component_recorded(self):
        # dicyclic of order 12 is not nilpotent; (<x>, 1) has non-trivial twisting
        from idemcodes.groups import group_dicyclic

        G = group_dicyclic(3)
        rep = code_search(G, get_field(5))
        skipped = [r for r in rep.results if r.skipped]
        # other components still produce codes
        assert skipped and rep.supported
        assert "nontrivial twisting" in skipped[0].skipped

    def test_json_stable(self, g21, F2):
        import json

        a = json.dumps(code_search(g21, F2).to_json(timing=False), sort_keys=True)
        b = json.dumps(code_search(g21, F2).to_json(timing=False), sort_keys=True)
        assert a == b


def test_cyclic_codes():
    # C_7 over F_2: the cyclic Hamming code and its dual appear
    G, F = cyclic_group(7), get_field(2)
    rep = code_search(G, F)
    assert rep.has(3, 4) and rep.has(1, 7)
