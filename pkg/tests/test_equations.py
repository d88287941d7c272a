import random

import pytest

from langrec import (
    Alphabet,
    EquationInstance,
    PreconditionError,
    UltrafilterApprox,
    Word,
    bsum2_membership_by_equations,
    bsum2_membership_direct,
    bsum2_quotient,
    equation_set,
    factorizations,
    generate_algebra,
    in_equation_set,
    joint_quotient,
    prefix_classes,
    regex_to_dfa,
    satisfies_equation,
    schutz_sum,
    separation_witness,
    trivial_algebra,
    universal_language,
)
from langrec.equations import lemma_factor_violations, lemma_witness_check
from langrec.campaigns import corpus_dfas

AB = Alphabet(("a", "b"))
A1 = Alphabet(("a",))


def points(q, *texts):
    return [UltrafilterApprox.of_word(q, Word.parse(q.alphabet, t)) for t in texts]


class TestSatisfiesEquation:
    def test_reflexive_pairs_always_hold(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        for i in range(q.monoid.size):
            e = EquationInstance(UltrafilterApprox(q, i), UltrafilterApprox(q, i))
            assert satisfies_equation(l, e)

    def test_same_class_words(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        mu, nu = points(q, "b", "bb")
        assert mu.point == nu.point  # both in the identity class
        assert satisfies_equation(l, EquationInstance(mu, nu))

    def test_separating_pair_fails(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        mu, nu = points(q, "a", "b")
        assert not satisfies_equation(l, EquationInstance(mu, nu))

    def test_unrecognised_language_is_a_precondition_error(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        mu, nu = points(q, "a", "b")
        with pytest.raises(PreconditionError):
            satisfies_equation(regex_to_dfa("a(a|b)*", AB), EquationInstance(mu, nu))


class TestPrefixClasses:
    def test_trivial_monoid(self):
        q = joint_quotient([universal_language(AB)])
        assert q.monoid.size == 1
        assert prefix_classes(UltrafilterApprox(q, 0), "a") == frozenset({0})

    def test_absorbing_class_factors_everywhere(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        (mu,) = points(q, "a")
        assert prefix_classes(mu, "a") == frozenset({0, 1})

    def test_identity_class_has_no_factorisation_at_a(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        (mu,) = points(q, "b")
        assert prefix_classes(mu, "a") == frozenset()

    def test_factorizations_are_table_exact(self):
        l = regex_to_dfa("(a|b)*a(a|b)*", AB)
        q = joint_quotient([l])
        img = q.morphism.letter_images[0]
        for point in range(q.monoid.size):
            for f in factorizations(q, point, "a"):
                assert q.monoid.mul(q.monoid.mul(f.prefix_class, img), f.suffix_class) == point


class TestEquationSet:
    def test_reflexive_membership(self):
        b = generate_algebra([regex_to_dfa("(a|b)*a(a|b)*", AB)])
        q = bsum2_quotient(universal_language(AB), b)
        for i in range(q.monoid.size):
            e = EquationInstance(UltrafilterApprox(q, i), UltrafilterApprox(q, i))
            assert in_equation_set(e, b)

    def test_idempotent_pair_is_an_equation(self):
        b = generate_algebra([regex_to_dfa("(a|b)*a(a|b)*", AB)])
        q = bsum2_quotient(universal_language(AB), b)
        mu, nu = points(q, "b", "bb")
        assert in_equation_set(EquationInstance(mu, nu), b)
        # cross-check: the languages of the sum satisfy it
        total = schutz_sum(b, trivial_algebra(AB))
        for atom in total.atoms:
            assert satisfies_equation(atom, EquationInstance(mu, nu))

    def test_prefix_condition_alone_can_fail(self):
        # over the trivial algebra both points share the unique atom, so
        # only the letter-factorisation condition can separate them
        b = trivial_algebra(AB)
        q = bsum2_quotient(universal_language(AB), b)
        mu, nu = points(q, "a", "b")
        e = EquationInstance(mu, nu)
        assert not in_equation_set(e, b)
        assert {p for p in prefix_classes(nu, "a")} == set()

    def test_equation_set_lists_same_signature_pairs(self):
        b = generate_algebra([regex_to_dfa("(a|b)*a(a|b)*", AB)])
        q = bsum2_quotient(universal_language(AB), b)
        pairs = equation_set(q, b)
        for e in pairs:
            assert in_equation_set(e, b)


class TestMembershipDecision:
    def test_members_of_the_base_algebra_pass(self):
        b = generate_algebra([regex_to_dfa("(a|b)*a(a|b)*", AB)])
        for atom in b.atoms:
            assert bsum2_membership_by_equations(atom, b)

    def test_marked_extension_over_trivial(self):
        b = trivial_algebra(AB)
        k = regex_to_dfa("(a|b)*a(a|b)*", AB)  # all words, then a, then all words
        assert bsum2_membership_by_equations(k, b)
        assert bsum2_membership_direct(k, b)

    def test_suffix_language_is_outside(self):
        b = trivial_algebra(AB)
        k = regex_to_dfa("(a|b)*a", AB)
        assert not bsum2_membership_by_equations(k, b)
        assert not bsum2_membership_direct(k, b)

    def test_agreement_on_seeded_instances(self):
        rng = random.Random(19)
        pools = {
            A1: ("∅", "ε", "a", "aa*", "(aa)*", "~∅"),
            AB: ("a", "ab", "a(a|b)*", "(a|b)*a", "(a|b)*a(a|b)*", "b*", "(ab)*"),
        }
        b_pools = {
            A1: ((), ("(aa)*",), ("a",)),
            AB: ((), ("(a|b)*a(a|b)*",), ("b*",)),
        }
        for _ in range(30):
            alph = rng.choice([A1, AB])
            b = generate_algebra(
                [regex_to_dfa(g, alph) for g in rng.choice(b_pools[alph])], alph
            )
            k = regex_to_dfa(rng.choice(pools[alph]), alph)
            assert bsum2_membership_by_equations(k, b) == bsum2_membership_direct(k, b)


class TestSeparationWitness:
    def test_member_has_no_witness(self):
        b = trivial_algebra(A1)
        assert separation_witness(regex_to_dfa("aa*", A1), b) is None

    def test_even_length_words_are_separated(self):
        b = trivial_algebra(A1)
        k = regex_to_dfa("(aa)*", A1)
        pair = separation_witness(k, b)
        assert pair is not None
        u, v = pair
        assert k.accepts(u) and not k.accepts(v)
        total = schutz_sum(b, trivial_algebra(A1))
        assert total.atom_of(u) == total.atom_of(v)

    def test_witnesses_validate_on_seeded_instances(self):
        rng = random.Random(4)
        pool = ("a", "ab", "(ab)*", "(a|b)*a", "a*", "(aa)*")
        b = trivial_algebra(AB)
        total = schutz_sum(b, trivial_algebra(AB))
        for r in pool:
            k = regex_to_dfa(r, AB)
            pair = separation_witness(k, b)
            if pair is None:
                assert total.member(k)
            else:
                u, v = pair
                assert k.accepts(u) != k.accepts(v)
                assert total.atom_of(u) == total.atom_of(v)


class TestLemmaChecks:
    def test_no_factorisation_violations_small_corpus(self):
        corpus = corpus_dfas()[:6]
        assert lemma_factor_violations(corpus, max_len=4) == []

    def test_witness_lemma_on_small_quotients(self):
        for gens in ((), ("(a|b)*a(a|b)*",)):
            b = generate_algebra([regex_to_dfa(g, AB) for g in gens], AB)
            q = bsum2_quotient(universal_language(AB), b)
            for point in range(q.monoid.size):
                for letter in range(2):
                    assert lemma_witness_check(q, b, point, letter)


class TestEquationOracle:
    def test_equation_set_matches_separation_oracle(self):
        # a pair is an equation exactly when no language of the sum
        # separates its two classes; members are unions of atoms, so it
        # suffices to test the atoms
        for gens in ((), ("(a|b)*a(a|b)*",)):
            b = generate_algebra([regex_to_dfa(g, AB) for g in gens], AB)
            q = bsum2_quotient(universal_language(AB), b)
            total = schutz_sum(b, trivial_algebra(AB))
            saturations = [q.saturation(atom) for atom in total.atoms]
            assert all(s is not None for s in saturations)
            for i in range(q.monoid.size):
                for j in range(q.monoid.size):
                    e = EquationInstance(
                        UltrafilterApprox(q, i), UltrafilterApprox(q, j)
                    )
                    separated = any((i in s) != (j in s) for s in saturations)
                    assert in_equation_set(e, b) == (not separated)

    def test_soundness_shadow_every_member_satisfies_every_equation(self):
        for gens in ((), ("b*",), ("(a|b)*a(a|b)*",)):
            b = generate_algebra([regex_to_dfa(g, AB) for g in gens], AB)
            q = bsum2_quotient(universal_language(AB), b)
            total = schutz_sum(b, trivial_algebra(AB))
            eqs = equation_set(q, b)
            for atom in total.atoms:
                for e in eqs:
                    assert satisfies_equation(atom, e)
