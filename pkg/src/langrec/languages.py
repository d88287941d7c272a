"""Alphabets, words, and regular languages as canonical minimal DFAs.

Every language-valued operation in this module returns the canonical
minimal complete DFA of its result: all states reachable, no two states
language-equivalent, and states numbered by breadth-first discovery
order from the initial state, exploring letters in alphabet order.  Two
DFAs produced here denote the same language exactly when they are equal
field by field, so language equality is structural equality.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InputError, ResourceLimitError
from .limits import closure_limit


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct letter names."""

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise InputError("an alphabet needs at least one letter")
        for name in self.letters:
            if not isinstance(name, str) or not name:
                raise InputError(f"letter names must be non-empty strings, got {name!r}")
        if len(set(self.letters)) != len(self.letters):
            raise InputError(f"duplicate letter names in {self.letters!r}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.letters)}

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown letter {name!r} for alphabet {self.letters}") from None

    def word(self, text: str) -> "Word":
        return Word.parse(self, text)

    def tuples_upto(self, max_len: int, min_len: int = 0) -> Iterator[tuple[int, ...]]:
        """All index tuples of length min_len..max_len in length-then-lex order."""
        k = len(self.letters)
        for length in range(min_len, max_len + 1):
            yield from itertools.product(range(k), repeat=length)

    def words_upto(self, max_len: int, min_len: int = 0) -> Iterator["Word"]:
        for t in self.tuples_upto(max_len, min_len):
            yield Word(self, t)

    def __repr__(self) -> str:
        return f"Alphabet({','.join(self.letters)})"


def alphabet(*letters: str) -> Alphabet:
    return Alphabet(tuple(letters))


@dataclass(frozen=True)
class Word:
    """Finite sequence of letter indices over a fixed alphabet."""

    alphabet: Alphabet
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.indices, tuple):
            object.__setattr__(self, "indices", tuple(self.indices))
        k = len(self.alphabet)
        for i in self.indices:
            if not (0 <= i < k):
                raise InputError(f"letter index {i} out of range for {self.alphabet!r}")

    @classmethod
    def parse(cls, alph: Alphabet, text: str) -> "Word":
        """Parse a word by greedy longest-match against letter names.

        Whitespace separates letters explicitly; 'ε' or the empty string
        denotes the empty word.
        """
        text = text.strip()
        if text in ("", "ε"):
            return cls(alph, ())
        names = sorted(alph.letters, key=len, reverse=True)
        out: list[int] = []
        for chunk in text.split():
            pos = 0
            while pos < len(chunk):
                for name in names:
                    if chunk.startswith(name, pos):
                        out.append(alph.index(name))
                        pos += len(name)
                        break
                else:
                    raise InputError(f"cannot read a letter of {alph!r} at {chunk[pos:]!r}")
        return cls(alph, tuple(out))

    def text(self) -> str:
        if not self.indices:
            return "ε"
        names = [self.alphabet.letters[i] for i in self.indices]
        if all(len(n) == 1 for n in self.alphabet.letters):
            return "".join(names)
        return " ".join(names)

    def __len__(self) -> int:
        return len(self.indices)

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise InputError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.indices + other.indices)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.indices[item])
        return self.indices[item]

    def __repr__(self) -> str:
        return f"Word({self.text()})"


@dataclass(frozen=True)
class Dfa:
    """Canonical minimal complete DFA.

    Instances should be built through the constructors in this module
    (or ``canonicalise``), which guarantee minimality and the canonical
    BFS state numbering; ``__init__`` validates shape only.
    """

    alphabet: Alphabet
    states: int
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    initial: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.transitions, tuple):
            object.__setattr__(self, "transitions", tuple(tuple(r) for r in self.transitions))
        if not isinstance(self.accepting, frozenset):
            object.__setattr__(self, "accepting", frozenset(self.accepting))
        k = len(self.alphabet)
        if self.states < 1:
            raise InputError("a complete DFA has at least one state")
        if len(self.transitions) != self.states:
            raise InputError("transition table must have one row per state")
        for row in self.transitions:
            if len(row) != k:
                raise InputError("each transition row must cover the whole alphabet")
            for target in row:
                if not (0 <= target < self.states):
                    raise InputError(f"transition target {target} out of range")
        if not (0 <= self.initial < self.states):
            raise InputError("initial state out of range")
        for q in self.accepting:
            if not (0 <= q < self.states):
                raise InputError(f"accepting state {q} out of range")

    # -- evaluation ---------------------------------------------------

    def run(self, state: int, indices: Iterable[int]) -> int:
        t = self.transitions
        for c in indices:
            state = t[state][c]
        return state

    def accepts(self, w: "Word | Iterable[int]") -> bool:
        idxs = w.indices if isinstance(w, Word) else tuple(w)
        return self.run(self.initial, idxs) in self.accepting

    def accepts_text(self, text: str) -> bool:
        return self.accepts(Word.parse(self.alphabet, text))

    # -- queries ------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.accepting

    def is_universal(self) -> bool:
        return len(self.accepting) == self.states

    def shortest_accepted(self) -> tuple[int, ...] | None:
        """Length-lex least accepted word, or None for the empty language."""
        if self.initial in self.accepting:
            return ()
        words: dict[int, tuple[int, ...]] = {self.initial: ()}
        frontier = [self.initial]
        while frontier:
            new: list[int] = []
            for q in frontier:
                for c in range(len(self.alphabet)):
                    r = self.transitions[q][c]
                    if r not in words:
                        words[r] = words[q] + (c,)
                        if r in self.accepting:
                            return words[r]
                        new.append(r)
            frontier = new
        return None

    def accepted_upto(self, max_len: int) -> list[tuple[int, ...]]:
        """All accepted index tuples of length <= max_len, length-lex order."""
        return [t for t in self.alphabet.tuples_upto(max_len) if self.accepts(t)]

    def sort_key(self) -> tuple:
        return (self.states, self.transitions, tuple(sorted(self.accepting)))

    # -- serialisation ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.letters),
            "states": self.states,
            "initial": self.initial,
            "accepting": sorted(self.accepting),
            "transitions": [list(row) for row in self.transitions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "Dfa":
        try:
            alph = Alphabet(tuple(data["alphabet"]))
            raw = cls(
                alph,
                int(data["states"]),
                tuple(tuple(int(x) for x in row) for row in data["transitions"]),
                frozenset(int(q) for q in data["accepting"]),
                int(data.get("initial", 0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed DFA file: {exc}") from exc
        return canonicalise(raw)

    @classmethod
    def from_json(cls, text: str) -> "Dfa":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    def __repr__(self) -> str:
        return f"Dfa({self.alphabet!r}, states={self.states}, accepting={sorted(self.accepting)})"


# -- canonical form ----------------------------------------------------


def _canonical(
    alph: Alphabet,
    transitions: Sequence[Sequence[int]],
    accepting: Iterable[int],
    initial: int,
) -> Dfa:
    """Trim, minimise (partition refinement), and BFS-renumber."""
    k = len(alph)
    acc_in = set(accepting)

    # reachable states, BFS in letter order
    order = [initial]
    pos = {initial: 0}
    for q in order:
        row = transitions[q]
        for c in range(k):
            r = row[c]
            if r not in pos:
                pos[r] = len(order)
                order.append(r)
    n = len(order)
    t = [[pos[transitions[order[i]][c]] for c in range(k)] for i in range(n)]
    acc = [order[i] in acc_in for i in range(n)]

    # Moore refinement: split by acceptance, then by successor blocks
    part = [1 if acc[i] else 0 for i in range(n)]
    nblocks = len(set(part))
    while True:
        sigs: dict[tuple, int] = {}
        new = [0] * n
        for q in range(n):
            s = (part[q], tuple(part[t[q][c]] for c in range(k)))
            b = sigs.get(s)
            if b is None:
                b = len(sigs)
                sigs[s] = b
            new[q] = b
        part = new
        if len(sigs) == nblocks:
            break
        nblocks = len(sigs)

    rep: dict[int, int] = {}
    for q in range(n):
        rep.setdefault(part[q], q)

    # BFS renumber over blocks, letters in alphabet order
    start = part[0]
    bfs = [start]
    bpos = {start: 0}
    for b in bfs:
        q = rep[b]
        for c in range(k):
            nb = part[t[q][c]]
            if nb not in bpos:
                bpos[nb] = len(bfs)
                bfs.append(nb)
    m = len(bfs)
    new_trans = tuple(tuple(bpos[part[t[rep[b]][c]]] for c in range(k)) for b in bfs)
    new_acc = frozenset(i for i, b in enumerate(bfs) if acc[rep[b]])
    return Dfa(alph, m, new_trans, new_acc, 0)


def canonicalise(d: Dfa) -> Dfa:
    return _canonical(d.alphabet, d.transitions, d.accepting, d.initial)


# -- constant languages ------------------------------------------------


def empty_language(alph: Alphabet) -> Dfa:
    k = len(alph)
    return Dfa(alph, 1, ((0,) * k,), frozenset())


def universal_language(alph: Alphabet) -> Dfa:
    k = len(alph)
    return Dfa(alph, 1, ((0,) * k,), frozenset({0}))


def epsilon_language(alph: Alphabet) -> Dfa:
    k = len(alph)
    return Dfa(alph, 2, ((1,) * k, (1,) * k), frozenset({0}))


def nonempty_universal(alph: Alphabet) -> Dfa:
    """All words of length >= 1."""
    k = len(alph)
    return Dfa(alph, 2, ((1,) * k, (1,) * k), frozenset({1}))


def letter_language(alph: Alphabet, name: str) -> Dfa:
    i = alph.index(name)
    k = len(alph)
    # states: 0 start, 1 accept, 2 sink
    trans = (
        tuple(1 if c == i else 2 for c in range(k)),
        (2,) * k,
        (2,) * k,
    )
    return _canonical(alph, trans, {1}, 0)


def word_language(w: Word) -> Dfa:
    """The singleton language {w}."""
    n = len(w.indices)
    k = len(w.alphabet)
    sink = n + 1
    rows = []
    for pos in range(n):
        rows.append(tuple(pos + 1 if c == w.indices[pos] else sink for c in range(k)))
    rows.append((sink,) * k)
    rows.append((sink,) * k)
    return _canonical(w.alphabet, rows, {n}, 0)


# -- Boolean operations ------------------------------------------------


def _require_same_alphabet(l1: Dfa, l2: Dfa) -> None:
    if l1.alphabet != l2.alphabet:
        raise InputError(
            f"operand alphabets differ: {l1.alphabet!r} vs {l2.alphabet!r}"
        )


def _product(l1: Dfa, l2: Dfa, keep: Callable[[bool, bool], bool]) -> Dfa:
    _require_same_alphabet(l1, l2)
    k = len(l1.alphabet)
    pairs: list[tuple[int, int]] = [(l1.initial, l2.initial)]
    pos = {pairs[0]: 0}
    trans: list[list[int]] = []
    i = 0
    while i < len(pairs):
        q1, q2 = pairs[i]
        row = []
        for c in range(k):
            r = (l1.transitions[q1][c], l2.transitions[q2][c])
            j = pos.get(r)
            if j is None:
                j = len(pairs)
                pos[r] = j
                pairs.append(r)
            row.append(j)
        trans.append(row)
        i += 1
    acc = {
        i
        for i, (q1, q2) in enumerate(pairs)
        if keep(q1 in l1.accepting, q2 in l2.accepting)
    }
    return _canonical(l1.alphabet, trans, acc, 0)


def union(l1: Dfa, l2: Dfa) -> Dfa:
    return _product(l1, l2, lambda a, b: a or b)


def intersection(l1: Dfa, l2: Dfa) -> Dfa:
    return _product(l1, l2, lambda a, b: a and b)


def difference(l1: Dfa, l2: Dfa) -> Dfa:
    return _product(l1, l2, lambda a, b: a and not b)


def symmetric_difference(l1: Dfa, l2: Dfa) -> Dfa:
    return _product(l1, l2, lambda a, b: a != b)


def complement(l: Dfa) -> Dfa:
    acc = frozenset(range(l.states)) - l.accepting
    return _canonical(l.alphabet, l.transitions, acc, l.initial)


def boolean_combine(op: str, l1: Dfa, l2: Dfa | None = None) -> Dfa:
    """Set-theoretic combination; `complement` is unary, the rest binary."""
    if op == "complement":
        if l2 is not None:
            raise InputError("complement takes a single operand")
        return complement(l1)
    if l2 is None:
        raise InputError(f"{op} needs two operands")
    table = {"union": union, "intersection": intersection, "difference": difference}
    try:
        f = table[op]
    except KeyError:
        raise InputError(f"unknown Boolean operation {op!r}") from None
    return f(l1, l2)


def is_subset(l1: Dfa, l2: Dfa) -> bool:
    return difference(l1, l2).is_empty()


def same_language(l1: Dfa, l2: Dfa) -> bool:
    """Equality via product-automaton emptiness, independent of canonicity."""
    return symmetric_difference(l1, l2).is_empty()


# -- quotients ---------------------------------------------------------


def left_quotient(w: Word, l: Dfa) -> Dfa:
    """The language w^-1 L = { u : wu in L }."""
    if w.alphabet != l.alphabet:
        raise InputError("quotient word must be over the language's alphabet")
    start = l.run(l.initial, w.indices)
    return _canonical(l.alphabet, l.transitions, l.accepting, start)


def right_quotient(l: Dfa, w: Word) -> Dfa:
    """The language L w^-1 = { u : uw in L }."""
    if w.alphabet != l.alphabet:
        raise InputError("quotient word must be over the language's alphabet")
    acc = {q for q in range(l.states) if l.run(q, w.indices) in l.accepting}
    return _canonical(l.alphabet, l.transitions, acc, l.initial)


# -- NFA machinery (internal) ------------------------------------------


class Nfa:
    """Epsilon-NFA used internally for concatenation-like constructions."""

    def __init__(
        self,
        alph: Alphabet,
        n: int,
        trans: list[list[set[int]]],
        eps: list[set[int]],
        initials: set[int],
        finals: set[int],
    ):
        self.alphabet = alph
        self.n = n
        self.trans = trans
        self.eps = eps
        self.initials = initials
        self.finals = finals

    @classmethod
    def from_dfa(cls, d: Dfa) -> "Nfa":
        k = len(d.alphabet)
        trans = [[{d.transitions[q][c]} for c in range(k)] for q in range(d.states)]
        eps: list[set[int]] = [set() for _ in range(d.states)]
        return cls(d.alphabet, d.states, trans, eps, {d.initial}, set(d.accepting))

    def _eclose(self, states: Iterable[int]) -> frozenset[int]:
        out = set(states)
        stack = list(out)
        while stack:
            q = stack.pop()
            for r in self.eps[q]:
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def determinize(self, max_states: int | None = None) -> Dfa:
        limit = closure_limit(max_states)
        k = len(self.alphabet)
        start = self._eclose(self.initials)
        subsets: list[frozenset[int]] = [start]
        pos = {start: 0}
        trans: list[list[int]] = []
        i = 0
        while i < len(subsets):
            s = subsets[i]
            row = []
            for c in range(k):
                targets: set[int] = set()
                for q in s:
                    targets |= self.trans[q][c]
                closed = self._eclose(targets)
                j = pos.get(closed)
                if j is None:
                    j = len(subsets)
                    if j >= limit:
                        raise ResourceLimitError(
                            f"subset construction exceeded {limit} states"
                        )
                    pos[closed] = j
                    subsets.append(closed)
                row.append(j)
            trans.append(row)
            i += 1
        acc = {i for i, s in enumerate(subsets) if s & self.finals}
        return _canonical(self.alphabet, trans, acc, 0)


# -- concatenation-like operations --------------------------------------


def marked_concat(l1: Dfa, letter: "str | int", l2: Dfa) -> Dfa:
    """The language { u a v : u in L1, v in L2 } for a single letter a."""
    _require_same_alphabet(l1, l2)
    a = l1.alphabet.index(letter) if isinstance(letter, str) else letter
    if not (0 <= a < len(l1.alphabet)):
        raise InputError(f"letter index {a} out of range")
    k = len(l1.alphabet)
    off = l1.states
    n = l1.states + l2.states
    trans: list[list[set[int]]] = []
    for q in range(l1.states):
        row = [{l1.transitions[q][c]} for c in range(k)]
        if q in l1.accepting:
            row[a] = row[a] | {off + l2.initial}
        trans.append(row)
    for q in range(l2.states):
        trans.append([{off + l2.transitions[q][c]} for c in range(k)])
    eps: list[set[int]] = [set() for _ in range(n)]
    finals = {off + q for q in l2.accepting}
    return Nfa(l1.alphabet, n, trans, eps, {l1.initial}, finals).determinize()


def concat(l1: Dfa, l2: Dfa) -> Dfa:
    """Classical concatenation via an epsilon-NFA; serves as the independent
    construction against which ``concat_decompose`` is validated."""
    _require_same_alphabet(l1, l2)
    k = len(l1.alphabet)
    off = l1.states
    n = l1.states + l2.states
    trans: list[list[set[int]]] = []
    for q in range(l1.states):
        trans.append([{l1.transitions[q][c]} for c in range(k)])
    for q in range(l2.states):
        trans.append([{off + l2.transitions[q][c]} for c in range(k)])
    eps: list[set[int]] = [set() for _ in range(n)]
    for q in l1.accepting:
        eps[q].add(off + l2.initial)
    finals = {off + q for q in l2.accepting}
    return Nfa(l1.alphabet, n, trans, eps, {l1.initial}, finals).determinize()


def star(l: Dfa) -> Dfa:
    """Kleene star via an epsilon-NFA."""
    k = len(l.alphabet)
    n = l.states + 1
    trans: list[list[set[int]]] = [[set() for _ in range(k)]]
    for q in range(l.states):
        trans.append([{1 + l.transitions[q][c]} for c in range(k)])
    eps: list[set[int]] = [set() for _ in range(n)]
    eps[0].add(1 + l.initial)
    for q in l.accepting:
        eps[1 + q].add(1 + l.initial)
    finals = {0} | {1 + q for q in l.accepting}
    return Nfa(l.alphabet, n, trans, eps, {0}, finals).determinize()


def concat_decompose(l1: Dfa, l2: Dfa, verbatim: bool = False) -> Dfa:
    """Concatenation assembled from marked concatenations and quotients:

        L1 L2  =  union over a of  L1 a (a^-1 L2),  plus L1 when ε in L2.

    With ``verbatim=True`` the correction term for ε in L2 is omitted,
    which drops the words of L1 paired with the empty suffix; the flag
    exists so the uncorrected identity can be evaluated for comparison.
    """
    _require_same_alphabet(l1, l2)
    alph = l1.alphabet
    out = empty_language(alph)
    for c in range(len(alph)):
        q2 = left_quotient(Word(alph, (c,)), l2)
        out = union(out, marked_concat(l1, c, q2))
    if not verbatim and l2.accepts(()):
        out = union(out, l1)
    return out
