import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherncert.chernring import (
    ChernMonomial,
    ChernPolynomial,
    PairClass,
    PunctureRangeError,
    SlotClass,
    canonicalize_monomial,
    embed_to_free,
    oriented_pair,
    pivot_monomial,
    verify_relations,
)
from cherncert.polyring import FreePolynomial, e


def pair(q, i, j):
    return ChernPolynomial.pair(q, i, j)


class TestEmbedding:
    def test_single_generator(self):
        assert embed_to_free(pair(1, 1, 2), 1) == e(1, 1) - e(1, 2)

    def test_telescoping_cycle_vanishes(self):
        total = pair(1, 1, 2) + pair(1, 2, 3) + pair(1, 3, 1)
        assert embed_to_free(total, 1) == FreePolynomial.zero()

    def test_pivot_product_identity(self):
        # (e1 - e2)(e1 - e3) with e3 = -e1 - e2 expands to 2 e1^2 - e1 e2 - e2^2
        lhs = embed_to_free(pair(1, 1, 2) * pair(1, 1, 3), 1)
        expected = (
            FreePolynomial.from_exponents({(1, 1): 2}, 2)
            - FreePolynomial.from_exponents({(1, 1): 1, (1, 2): 1})
            - FreePolynomial.from_exponents({(1, 2): 2})
        )
        assert lhs == expected

    def test_rooted_square_identity_all_permutations(self):
        # c_{s1 s2} c_{s1 s3} = 2 e_{s1}^2 + e_{s2} e_{s3} for every permutation
        for q in (1, 2, 3):
            for s1, s2, s3 in itertools.permutations((1, 2, 3)):
                lhs = embed_to_free(pair(q, s1, s2) * pair(q, s1, s3), q)
                rhs = embed_to_free(
                    2 * ChernPolynomial.slot(q, s1) * ChernPolynomial.slot(q, s1)
                    + ChernPolynomial.slot(q, s2) * ChernPolynomial.slot(q, s3),
                    q,
                )
                assert lhs == rhs

    def test_puncture_out_of_range(self):
        with pytest.raises(PunctureRangeError):
            embed_to_free(pair(2, 1, 2), 1)


class TestCanonicalizeMonomial:
    def test_reversed_pair_with_odd_power_flips_sign(self):
        mono = canonicalize_monomial([(1, 2, 1, 3)])
        assert mono.sign == -1
        assert mono.factors == ((PairClass(1, 1, 2), 3),)

    def test_zero_exponent_gives_unit(self):
        mono = canonicalize_monomial([(1, 1, 2, 0)])
        assert mono == ChernMonomial.unit()

    def test_canonical_pair_untouched(self):
        mono = canonicalize_monomial([(2, 3, 1, 2)])
        assert mono.sign == 1
        assert mono.factors == ((PairClass(2, 3, 1), 2),)

    def test_diagonal_pair_rejected(self):
        with pytest.raises(ValueError):
            canonicalize_monomial([(1, 2, 2, 1)])

    def test_even_reversed_power_keeps_sign(self):
        mono = canonicalize_monomial([(1, 2, 1, 4)])
        assert mono.sign == 1

    def test_idempotent_and_sign_consistent(self):
        raw = [(1, 2, 1, 3), (1, 2, 3, 2), (2, 1, 3, 1)]
        mono = canonicalize_monomial(raw)
        again = canonicalize_monomial(
            [(gen.q, gen.i, gen.j, exp) for gen, exp in mono.factors]
        )
        assert again.factors == mono.factors
        assert again.sign == 1  # canonical input needs no further flips
        # embedding before and after canonicalization agrees
        direct = FreePolynomial.one()
        for q, i, j, exp in raw:
            direct = direct * (e(q, i) - e(q, j)) ** exp
        assert embed_to_free(mono, 2) == direct


class TestPivotMonomial:
    def test_flip_sign_matches_power_parity(self):
        assert pivot_monomial(1, 1, 3).sign == -1
        assert pivot_monomial(1, 1, 2).sign == 1

    def test_embeds_to_rooted_product(self):
        for root in (1, 2, 3):
            j, k = [s for s in (1, 2, 3) if s != root]
            direct = embed_to_free(pair(1, root, j) * pair(1, root, k), 1)
            assert embed_to_free(pivot_monomial(1, root, 1), 1) == direct


class TestRelations:
    def test_all_families_hold(self):
        report = verify_relations(1)
        assert report.all_ok
        families = {c.family for c in report.checks}
        assert families == {
            "pair-additivity",
            "antisymmetry",
            "slot-difference",
            "pair-to-slot",
            "slot-trace",
        }

    def test_antisymmetry_instance(self):
        report = verify_relations(1)
        checks = [c for c in report.checks if c.family == "antisymmetry" and c.indices == (1, 2)]
        assert checks and checks[0].ok

    def test_pair_to_slot_instance(self):
        # c_12 + c_13 = 3 e_1
        lhs = pair(1, 1, 2) + pair(1, 1, 3) - 3 * ChernPolynomial.slot(1, 1)
        assert embed_to_free(lhs, 1).is_zero()

    def test_mutated_relation_fails_with_witness(self):
        report = verify_relations(2, mutate=True)
        assert not report.all_ok
        (bad,) = report.failures()
        assert bad.family == "mutated"
        assert bad.q == 2
        assert bad.witness == embed_to_free(pair(2, 2, 3), 2)

    def test_bad_n(self):
        with pytest.raises(ValueError):
            verify_relations(0)


# -- randomized structure ------------------------------------------------------

gen_strategy = st.one_of(
    st.tuples(st.integers(1, 2), st.sampled_from([(1, 2), (2, 3), (3, 1)])).map(
        lambda t: PairClass(t[0], *t[1])
    ),
    st.tuples(st.integers(1, 2), st.integers(1, 3)).map(lambda t: SlotClass(*t)),
)
monomial_strategy = st.builds(
    lambda factors, sign: ChernMonomial.make(factors, sign),
    st.lists(st.tuples(gen_strategy, st.integers(1, 3)), max_size=3),
    st.sampled_from([1, -1]),
)
coeffs = st.fractions(
    min_value=Fraction(-20), max_value=Fraction(20), max_denominator=7
).filter(lambda c: c != 0)
chern_polys = st.lists(st.tuples(coeffs, monomial_strategy), max_size=3).map(
    lambda terms: ChernPolynomial(tuple(terms))
)


@settings(max_examples=50, deadline=None)
@given(chern_polys, chern_polys)
def test_embedding_is_a_ring_homomorphism(p, q):
    n = 2
    assert embed_to_free(p * q, n) == embed_to_free(p, n) * embed_to_free(q, n)
    assert embed_to_free(p + q, n) == embed_to_free(p, n) + embed_to_free(q, n)


@settings(max_examples=50, deadline=None)
@given(chern_polys)
def test_combined_preserves_value(p):
    assert embed_to_free(p.combined(), 2) == embed_to_free(p, 2)


def test_oriented_pair_signs():
    assert oriented_pair(1, 1, 2) == (PairClass(1, 1, 2), 1)
    assert oriented_pair(1, 2, 1) == (PairClass(1, 1, 2), -1)
    assert oriented_pair(1, 1, 3) == (PairClass(1, 3, 1), -1)
