"""Equation-based membership for the sum of an algebra with the trivial
algebra, at finite resolution.

Ultrafilters on words are approximated by elements of a finite quotient
of the free monoid: a word stands for its principal ultrafilter, and an
element of the quotient stands for the set of ultrafilters mapping to
it.  An equation is a pair of such points; a language recognised by the
quotient satisfies the equation when its saturation contains both
points or neither.

For a quotient-closed algebra B, the defining condition of the equation
set of "B plus marked concatenations with the full language" asks that
the two points lie in the same B-atom and that, letter by letter, the
multiplication-table factorisations p * eta(a) * q = point reach the
same sets of B-atoms on the prefix side.  Because every element of the
quotient is realised by a word, a table factorisation of a point is
exactly a word factorisation of its class, which makes the reduction
from ultrafilters to table scans sound; the agreement with the direct
closure oracle is nevertheless re-validated empirically by the
verification campaigns rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, PreconditionError
from .algebra import LanguageAlgebra, schutz_sum, trivial_algebra
from .languages import (
    Dfa,
    Word,
    difference,
    intersection,
    marked_concat,
    universal_language,
)
from .marking import MarkedWord, prefix_to_mark, replace_at_mark
from .monoids import FiniteQuotient, joint_quotient


@dataclass(frozen=True)
class UltrafilterApprox:
    """A point of a finite quotient, standing for the ultrafilters on
    words that map to it; a word yields the point of its class."""

    quotient: FiniteQuotient
    point: int

    def __post_init__(self) -> None:
        if not (0 <= self.point < self.quotient.monoid.size):
            raise InputError("point out of range for the quotient")

    @classmethod
    def of_word(cls, quotient: FiniteQuotient, w: "Word | Iterable[int]") -> "UltrafilterApprox":
        return cls(quotient, quotient.class_of(w))

    def representative(self) -> Word:
        return self.quotient.reps[self.point]


@dataclass(frozen=True)
class EquationInstance:
    """A pair of ultrafilter approximants over one quotient."""

    mu: UltrafilterApprox
    nu: UltrafilterApprox

    def __post_init__(self) -> None:
        if self.mu.quotient != self.nu.quotient:
            raise InputError("equation sides must share a quotient")

    @property
    def quotient(self) -> FiniteQuotient:
        return self.mu.quotient


@dataclass(frozen=True)
class FactorizationClass:
    """A table factorisation point = prefix * letter * suffix, carrying
    the observable content of a marked-word preimage: replacing the
    marked letter lands in the class ``prefix * letter * suffix`` while
    the prefix before the mark lands in ``prefix``."""

    letter: int
    prefix_class: int
    suffix_class: int


def satisfies_equation(l: Dfa, e: EquationInstance) -> bool:
    """Whether the saturation of L contains both points or neither.

    L must be recognised by the equation's quotient; otherwise the
    equation's truth is not determined at this resolution.
    """
    sat = e.quotient.saturation(l)
    if sat is None:
        raise PreconditionError(
            "language is not recognised by the equation's quotient"
        )
    return (e.mu.point in sat) == (e.nu.point in sat)


def factorizations(
    q: FiniteQuotient, point: int, letter: "str | int"
) -> list[FactorizationClass]:
    """All (p, s) with p * eta(letter) * s = point, by table scan."""
    a = q.alphabet.index(letter) if isinstance(letter, str) else letter
    img = q.morphism.letter_images[a]
    table = q.monoid.table
    n = q.monoid.size
    out = []
    for p in range(n):
        pa = table[p][img]
        for s in range(n):
            if table[pa][s] == point:
                out.append(FactorizationClass(a, p, s))
    return out


def prefix_classes(mu: UltrafilterApprox, letter: "str | int") -> frozenset[int]:
    """The prefix sides of all factorisations of the point at the letter."""
    return frozenset(
        f.prefix_class for f in factorizations(mu.quotient, mu.point, letter)
    )


def _atom_map(q: FiniteQuotient, b: LanguageAlgebra) -> list[int]:
    """B-atom of each quotient element, via representatives; requires the
    quotient to recognise every atom of B (checked)."""
    for atom in b.atoms:
        if q.saturation(atom) is None:
            raise PreconditionError(
                "quotient does not recognise the algebra; equations undetermined"
            )
    return [b.atom_of(rep) for rep in q.reps]


def in_equation_set(e: EquationInstance, b: LanguageAlgebra) -> bool:
    """Membership of the pair in the finite-resolution equation set:
    same B-atom, and for every letter the same set of prefix-side atoms."""
    q = e.quotient
    atom_of = _atom_map(q, b)
    if atom_of[e.mu.point] != atom_of[e.nu.point]:
        return False
    for a in range(len(q.alphabet)):
        mu_atoms = {atom_of[p] for p in prefix_classes(e.mu, a)}
        nu_atoms = {atom_of[p] for p in prefix_classes(e.nu, a)}
        if mu_atoms != nu_atoms:
            return False
    return True


# -- the joint quotient and the decision procedure --------------------------


def bsum2_quotient(
    k: Dfa, b: LanguageAlgebra, *, max_size: int | None = None
) -> FiniteQuotient:
    """Product of the syntactic monoids of b's atoms, of every marked
    extension atom.a.(all words), and of the candidate, restricted to
    the letter-generated submonoid."""
    if b.semigroup:
        raise PreconditionError("equation machinery works over full-word algebras")
    if k.alphabet != b.alphabet:
        raise InputError("candidate and algebra must share an alphabet")
    alph = b.alphabet
    univ = universal_language(alph)
    langs: list[Dfa] = list(b.atoms)
    for atom in b.atoms:
        for c in range(len(alph)):
            langs.append(marked_concat(atom, c, univ))
    langs.append(k)
    return joint_quotient(langs, max_size=max_size)


def _equation_signatures(
    q: FiniteQuotient, b: LanguageAlgebra
) -> list[tuple]:
    """Per element: its B-atom plus, for every letter, the set of atoms
    reached by prefix sides of factorisations.  Two elements form an
    equation of the sum exactly when their signatures coincide."""
    atom_of = _atom_map(q, b)
    n = q.monoid.size
    table = q.monoid.table
    sigs = []
    for point in range(n):
        per_letter = []
        for a in range(len(q.alphabet)):
            img = q.morphism.letter_images[a]
            atoms = set()
            for p in range(n):
                pa = table[p][img]
                if any(table[pa][s] == point for s in range(n)):
                    atoms.add(atom_of[p])
            per_letter.append(frozenset(atoms))
        sigs.append((atom_of[point], tuple(per_letter)))
    return sigs


def equation_set(
    q: FiniteQuotient, b: LanguageAlgebra
) -> list[EquationInstance]:
    """All equations of the finite-resolution set over the quotient,
    with mu < nu (the reflexive pairs are omitted: they say nothing)."""
    sigs = _equation_signatures(q, b)
    n = q.monoid.size
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if sigs[i] == sigs[j]:
                out.append(
                    EquationInstance(
                        UltrafilterApprox(q, i), UltrafilterApprox(q, j)
                    )
                )
    return out


def bsum2_membership_by_equations(
    k: Dfa, b: LanguageAlgebra, *, max_size: int | None = None
) -> bool:
    """Whether the candidate satisfies every finite-resolution equation
    of the sum of b with the trivial algebra.

    The contract — validated, not assumed — is agreement with direct
    membership in ``schutz_sum(b, trivial_algebra(...))``.
    """
    q = bsum2_quotient(k, b, max_size=max_size)
    sat = q.saturation(k)
    if sat is None:
        raise PreconditionError("candidate not recognised by its own joint quotient")
    sigs = _equation_signatures(q, b)
    by_sig: dict[tuple, bool] = {}
    for point, sig in enumerate(sigs):
        inside = point in sat
        if sig in by_sig:
            if by_sig[sig] != inside:
                return False
        else:
            by_sig[sig] = inside
    return True


def bsum2_membership_direct(k: Dfa, b: LanguageAlgebra, **bounds) -> bool:
    """Oracle: direct closure membership in the sum with the trivial algebra."""
    return schutz_sum(b, trivial_algebra(b.alphabet, b.semigroup), **bounds).member(k)


def separation_witness(
    k: Dfa, b: LanguageAlgebra, **bounds
) -> tuple[Word, Word] | None:
    """If the candidate is outside the sum, two words in one atom of the
    sum's refinement with opposite candidate membership; None otherwise."""
    total = schutz_sum(b, trivial_algebra(b.alphabet, b.semigroup), **bounds)
    for atom in total.atoms:
        inside = intersection(atom, k)
        outside = difference(atom, k)
        if not inside.is_empty() and not outside.is_empty():
            u = inside.shortest_accepted()
            v = outside.shortest_accepted()
            return (Word(k.alphabet, u), Word(k.alphabet, v))
    return None


# -- lemma-level checks ------------------------------------------------------


def replaced_in_extension(mw: MarkedWord, letter: "str | int", l: Dfa) -> bool:
    """The principal-ultrafilter reading of the factorisation lemma:
    if the prefix before the mark lies in L, the word with the marked
    letter replaced lies in L.letter.(all words)."""
    if not l.accepts(prefix_to_mark(mw)):
        return True  # nothing to check
    alph = l.alphabet
    ext = marked_concat(l, letter, universal_language(alph))
    return ext.accepts(replace_at_mark(mw, letter))


def lemma_factor_violations(
    corpus: Sequence[Dfa], max_len: int = 5
) -> list[tuple[str, int, str, int]]:
    """Exhaustive principal-ultrafilter check of the factorisation lemma:
    returns (word, position, letter, corpus index) tuples violating it."""
    out = []
    for li, l in enumerate(corpus):
        alph = l.alphabet
        univ = universal_language(alph)
        exts = [marked_concat(l, c, univ) for c in range(len(alph))]
        for t in alph.tuples_upto(max_len, 1):
            w = Word(alph, t)
            for i in range(len(t)):
                mw = MarkedWord(w, i)
                if not l.accepts(prefix_to_mark(mw)):
                    continue
                for c in range(len(alph)):
                    if not exts[c].accepts(replace_at_mark(mw, c)):
                        out.append((w.text(), i, alph.letters[c], li))
    return out


def factorization_witness(
    q: FiniteQuotient, b: LanguageAlgebra, point: int, letter: "str | int", atom: int
) -> FactorizationClass | None:
    """A factorisation of the point at the letter whose prefix side lies
    in the given atom, if one exists."""
    atom_of = _atom_map(q, b)
    for f in factorizations(q, point, letter):
        if atom_of[f.prefix_class] == atom:
            return f
    return None


def lemma_witness_check(
    q: FiniteQuotient, b: LanguageAlgebra, point: int, letter: "str | int"
) -> bool:
    """Finite form of the quasi-inverse lemma, restricted to principal
    filters of single atoms: whenever the point's class sits inside
    atom.letter.(all words), some factorisation reaches that atom on the
    prefix side; and conversely every prefix-side atom really yields
    such a containment."""
    a = q.alphabet.index(letter) if isinstance(letter, str) else letter
    univ = universal_language(b.alphabet)
    rep = q.reps[point]
    atom_of = _atom_map(q, b)
    reached = {atom_of[p] for p in prefix_classes(UltrafilterApprox(q, point), a)}
    for i, atom in enumerate(b.atoms):
        ext = marked_concat(atom, a, univ)
        sat = q.saturation(ext)
        if sat is None:
            return False  # quotient too coarse for this check
        inside = point in sat
        if inside and factorization_witness(q, b, point, a, i) is None:
            return False
        if not inside and i in reached:
            return False
    return True
