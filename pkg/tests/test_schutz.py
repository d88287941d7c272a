import itertools
import random

import pytest

from langrec import (
    Alphabet,
    BinarySchutz,
    FiniteMonoid,
    HitClopen,
    MonoidMorphism,
    PreconditionError,
    ResourceLimitError,
    UnarySchutz,
    Word,
    empty_language,
    enumerate_monoids,
    enumerate_semigroups,
    exists_language,
    exists_letter_images,
    exists_profile,
    exists_projection,
    local_schutz_morphism,
    marked_concat,
    marked_split_set,
    nonempty_universal,
    recognises_exists,
    regex_to_dfa,
    split_language,
    syntactic_monoid,
)
from langrec.marking import ExtendedAlphabet, tag_unmarked

AB = Alphabet(("a", "b"))
A1 = Alphabet(("a",))

Z2 = FiniteMonoid(((0, 1), (1, 0)), identity=0)
U1 = FiniteMonoid(((0, 1), (1, 1)), identity=0)  # {1, z} with zz = z


class TestUnaryProduct:
    def test_unit_law(self):
        d = UnarySchutz(U1)
        for s in (frozenset(), frozenset({0}), frozenset({0, 1})):
            for m in (0, 1):
                assert d.mul(d.unit(), (s, m)) == (s, m)
                assert d.mul((s, m), d.unit()) == (s, m)

    def test_z2_product(self):
        d = UnarySchutz(Z2)
        # first components: S.n = {0+0}, m.T = {1+1}; both are {0}
        assert d.mul((frozenset({0}), 1), (frozenset({1}), 0)) == (frozenset({0}), 1)

    def test_idempotent_base_product(self):
        d = UnarySchutz(U1)
        # ({z}, 1) * ({1}, z): S.n = {z.z} = {z}, m.T = {1.1} = {1}
        got = d.mul((frozenset({1}), 0), (frozenset({0}), 1))
        assert got == (frozenset({0, 1}), 1)

    def test_size_formula(self):
        for n in (1, 2, 3):
            for m in enumerate_monoids(n):
                assert UnarySchutz(m).size == 2**n * n
            for s in enumerate_semigroups(n):
                assert UnarySchutz(s).size == (2**n - 1) * n

    def test_materialised_tables_are_monoids(self):
        # FiniteMonoid construction re-checks associativity and the unit
        for n in (1, 2, 3):
            for base in enumerate_monoids(n):
                mfm, elems = UnarySchutz(base).as_finite_monoid(max_base=3)
                assert mfm.size == 2**n * n
                assert mfm.identity == elems.index((frozenset(), base.identity))

    def test_second_projection_is_a_morphism(self):
        for base in enumerate_monoids(3)[:10]:
            d = UnarySchutz(base)
            elems = list(d.carrier())
            for p in elems:
                for q in elems:
                    assert d.mul(p, q)[1] == base.mul(p[1], q[1])

    def test_semigroup_mode_has_no_unit(self):
        s = enumerate_semigroups(2)[0]
        with pytest.raises(PreconditionError):
            UnarySchutz(s).unit()

    def test_materialisation_bound(self):
        z7 = FiniteMonoid(
            tuple(tuple((i + j) % 7 for j in range(7)) for i in range(7)), identity=0
        )
        with pytest.raises(ResourceLimitError):
            UnarySchutz(z7).as_finite_monoid()


class TestUnaryActions:
    def test_unit_component_is_identity(self):
        d = UnarySchutz(U1)
        for x in d.carrier():
            assert d.left_action(d.unit(), x) == x
            assert d.right_action(d.unit(), x) == x

    def test_actions_agree_with_multiplication_exhaustively(self):
        for n in (1, 2, 3):
            for base in enumerate_monoids(n):
                d = UnarySchutz(base)
                elems = list(d.carrier())
                for p in elems:
                    for x in elems:
                        assert d.left_action(p, x) == d.mul(p, x)
                        assert d.right_action(p, x) == d.mul(x, p)

    def test_compatibility_exhaustively(self):
        for n in (1, 2):
            for base in enumerate_monoids(n) + enumerate_semigroups(n):
                d = UnarySchutz(base)
                elems = list(d.carrier())
                for p in elems:
                    for q in elems:
                        for x in elems:
                            assert d.left_action(p, d.right_action(q, x)) == \
                                d.right_action(q, d.left_action(p, x))


class TestExistsMorphism:
    def test_profile_of_empty_word(self):
        ext = ExtendedAlphabet(A1)
        tau = MonoidMorphism(ext.ext, Z2, (0, 1))
        assert exists_profile(tau, Word(A1, ())) == (frozenset(), 0)

    def test_profile_counts_markings(self):
        ext = ExtendedAlphabet(A1)
        tau = MonoidMorphism(ext.ext, Z2, (0, 1))  # a#0 -> 0, a#1 -> 1
        assert exists_profile(tau, A1.word("aa")) == (frozenset({1}), 0)

    def test_letter_generated(self):
        ext = ExtendedAlphabet(AB)
        tau = MonoidMorphism(ext.ext, U1, (0, 1, 0, 0))
        images = exists_letter_images(tau)
        assert images[0] == (frozenset({1}), 0)
        assert images[1] == (frozenset({0}), 0)

    def test_homomorphism_law_random_pairs(self):
        ext = ExtendedAlphabet(AB)
        tau = MonoidMorphism(ext.ext, U1, (0, 1, 1, 0))
        d = UnarySchutz(U1)
        rng = random.Random(9)
        for _ in range(1000):
            v = Word(AB, tuple(rng.randrange(2) for _ in range(rng.randint(0, 5))))
            w = Word(AB, tuple(rng.randrange(2) for _ in range(rng.randint(0, 5))))
            assert d.mul(exists_profile(tau, v), exists_profile(tau, w)) == \
                exists_profile(tau, v + w)

    def test_plain_component_commutes_with_tagging(self):
        ext = ExtendedAlphabet(AB)
        tau = MonoidMorphism(ext.ext, U1, (1, 0, 0, 1))
        for t in AB.tuples_upto(8):
            w = Word(AB, t)
            assert exists_profile(tau, w)[1] == tau.evaluate(tag_unmarked(w, ext))

    def test_recognises_existential_projection(self):
        ext = ExtendedAlphabet(AB)
        l_marked = regex_to_dfa("('a#0'|'b#0')* 'a#1' ('a#0'|'b#0')*", ext.ext)
        syn = syntactic_monoid(l_marked)
        got = exists_language(syn.morphism, syn.accepting)
        assert got == exists_projection(l_marked)
        assert got == regex_to_dfa("(a|b)*a(a|b)*", AB)
        assert recognises_exists(syn.morphism, syn.accepting, AB.word("ba"))
        assert not recognises_exists(syn.morphism, syn.accepting, AB.word("bb"))

    def test_empty_accepting_set_rejects_everything(self):
        ext = ExtendedAlphabet(AB)
        tau = MonoidMorphism(ext.ext, U1, (0, 1, 1, 0))
        assert exists_language(tau, frozenset()) == empty_language(AB)
        for t in AB.tuples_upto(4):
            assert not recognises_exists(tau, frozenset(), Word(AB, t))

    def test_full_accepting_set_accepts_all_nonempty(self):
        ext = ExtendedAlphabet(AB)
        tau = MonoidMorphism(ext.ext, U1, (0, 1, 1, 0))
        assert exists_language(tau, {0, 1}) == nonempty_universal(AB)


class TestBinaryProduct:
    def test_unit_law(self):
        d = BinarySchutz(U1, U1)
        x = (frozenset({(0, 1)}), 1, 0)
        assert d.mul(d.unit(), x) == x
        assert d.mul(x, d.unit()) == x

    def test_worked_product(self):
        d = BinarySchutz(U1, U1)
        got = d.mul((frozenset({(0, 0)}), 1, 0), (frozenset(), 0, 1))
        assert got == (frozenset({(0, 1)}), 1, 1)

    def test_associativity_sampled_size3(self):
        rng = random.Random(77)
        m3 = enumerate_monoids(3)
        d = BinarySchutz(rng.choice(m3), rng.choice(m3))
        elems = list(d.carrier())
        for _ in range(1000):
            p, q, r = (rng.choice(elems) for _ in range(3))
            assert d.mul(d.mul(p, q), r) == d.mul(p, d.mul(q, r))

    def test_materialised_tables_up_to_512(self):
        for n1, n2 in ((1, 1), (1, 2), (2, 2), (1, 3), (2, 3)):
            m1 = enumerate_monoids(n1)[-1]
            m2 = enumerate_monoids(n2)[-1]
            d = BinarySchutz(m1, m2)
            mfm, _ = d.as_finite_monoid(max_carrier=512)
            assert mfm.size == d.size == 2 ** (n1 * n2) * n1 * n2

    def test_actions_agree_with_multiplication(self):
        for n1 in (1, 2):
            for n2 in (1, 2):
                for m1 in enumerate_monoids(n1):
                    for m2 in enumerate_monoids(n2):
                        d = BinarySchutz(m1, m2)
                        elems = list(d.carrier())
                        for p in elems:
                            for x in elems:
                                assert d.left_action(p, x) == d.mul(p, x)
                                assert d.right_action(p, x) == d.mul(x, p)

    def test_compatibility_exhaustive_base_two(self):
        d = BinarySchutz(U1, Z2)
        elems = list(d.carrier())
        for p in elems:
            for q in elems:
                for x in elems:
                    assert d.left_action(p, d.right_action(q, x)) == \
                        d.right_action(q, d.left_action(p, x))

    def test_mixed_modes_rejected(self):
        from langrec import InputError

        with pytest.raises(InputError):
            BinarySchutz(U1, enumerate_semigroups(2)[0])


class TestSplitSets:
    def setup_method(self):
        self.phi1 = MonoidMorphism(AB, U1, (1, 0))  # a -> z, b -> 1
        self.phi2 = MonoidMorphism(AB, U1, (1, 0))

    def test_no_occurrence_gives_empty(self):
        assert marked_split_set(self.phi1, self.phi2, "a", AB.word("bb")) == frozenset()

    def test_single_letter(self):
        got = marked_split_set(self.phi1, self.phi2, "a", AB.word("a"))
        assert got == frozenset({(0, 0)})

    def test_two_splits(self):
        got = marked_split_set(self.phi1, self.phi2, "a", AB.word("aba"))
        assert got == frozenset({(0, 1), (1, 0)})

    def test_split_language_is_marked_concat(self):
        for v1 in (frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})):
            for v2 in (frozenset({0}), frozenset({1})):
                l1 = self.phi1.preimage(v1)
                l2 = self.phi2.preimage(v2)
                got = split_language(self.phi1, self.phi2, "a", v1, v2)
                assert got == marked_concat(l1, "a", l2)


class TestLocalMorphism:
    def test_empty_word_value(self):
        phi1 = MonoidMorphism(AB, U1, (1, 0))
        phi2 = MonoidMorphism(AB, Z2, (1, 0))
        loc = local_schutz_morphism(phi1, phi2)
        assert loc.evaluate(Word(AB, ())) == ((frozenset(), frozenset()), 0, 0)

    def test_morphism_law(self):
        phi1 = MonoidMorphism(AB, U1, (1, 0))
        phi2 = MonoidMorphism(AB, Z2, (1, 0))
        loc = local_schutz_morphism(phi1, phi2)
        rng = random.Random(3)
        for _ in range(1000):
            v = Word(AB, tuple(rng.randrange(2) for _ in range(rng.randint(0, 5))))
            w = Word(AB, tuple(rng.randrange(2) for _ in range(rng.randint(0, 5))))
            assert loc.mul(loc.evaluate(v), loc.evaluate(w)) == loc.evaluate(v + w)

    def test_recognises_marked_concatenations(self):
        phi1 = MonoidMorphism(AB, U1, (1, 0))
        phi2 = MonoidMorphism(AB, Z2, (1, 0))
        loc = local_schutz_morphism(phi1, phi2)
        for c in range(2):
            for x in range(2):
                for y in range(2):
                    expect = marked_concat(
                        phi1.preimage({x}), c, phi2.preimage({y})
                    )
                    got = loc.language_of(lambda e: (x, y) in e[0][c])
                    assert got == expect

    def test_split_components_match_direct_evaluation(self):
        phi1 = MonoidMorphism(AB, U1, (1, 0))
        phi2 = MonoidMorphism(AB, Z2, (1, 0))
        loc = local_schutz_morphism(phi1, phi2)
        for t in AB.tuples_upto(5):
            w = Word(AB, t)
            e = loc.evaluate(w)
            for c in range(2):
                assert e[0][c] == marked_split_set(phi1, phi2, c, w)


class TestHitClopen:
    def test_hit_and_miss(self):
        hit = HitClopen("hit", frozenset({1}))
        assert hit.contains({1, 2})
        assert not hit.contains({2})
        miss = HitClopen("miss", frozenset({1, 2}))
        assert miss.contains({1})
        assert not miss.contains({3})

    def test_miss_is_complement_of_hit_of_complement(self):
        universe = range(4)
        subsets = [
            frozenset(s)
            for r in range(5)
            for s in itertools.combinations(universe, r)
        ]
        for witness in subsets:
            miss = HitClopen("miss", witness)
            hit_comp = HitClopen("hit", frozenset(universe) - witness)
            for s in subsets:
                assert miss.contains(s) == (not hit_comp.contains(s))
