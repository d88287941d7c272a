"""Regular expression syntax and compilation to canonical DFAs.

Text syntax:

    ∅ or 0          empty language
    ε or 1          empty word
    a               single-character letter name
    'a#0' / "a#0"   quoted letter name (required for multi-character names)
    r s  /  r . s   concatenation
    r | s           union
    r & s           intersection
    ~ r             complement (binds to the following starred atom)
    r *             Kleene star
    ( r )           grouping

Precedence, loosest to tightest: ``|``, ``&``, juxtaposition, ``~``/``*``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .languages import (
    Alphabet,
    Dfa,
    complement,
    concat,
    empty_language,
    epsilon_language,
    intersection,
    letter_language,
    star,
    union,
)


@dataclass(frozen=True)
class Regex:
    pass


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Letter(Regex):
    name: str


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class Intersect(Regex):
    parts: tuple[Regex, ...]


@dataclass(frozen=True)
class Complement(Regex):
    inner: Regex


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


_RESERVED = set("∅01ε.|&~*()'\"")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in ("'", '"'):
            j = text.find(ch, i + 1)
            if j < 0:
                raise InputError(f"unterminated quoted letter name at {text[i:]!r}")
            name = text[i + 1 : j]
            if not name:
                raise InputError("empty quoted letter name")
            tokens.append(("name", name))
            i = j + 1
            continue
        if ch in "∅01ε.|&~*()":
            tokens.append(("sym", ch))
            i += 1
            continue
        tokens.append(("name", ch))
        i += 1
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise InputError("unexpected end of regular expression")
        self.pos += 1
        return tok

    def expect(self, sym: str) -> None:
        tok = self.take()
        if tok != ("sym", sym):
            raise InputError(f"expected {sym!r}, got {tok[1]!r}")

    def parse(self) -> Regex:
        r = self.union()
        if self.peek() is not None:
            raise InputError(f"trailing input at {self.peek()[1]!r}")
        return r

    def union(self) -> Regex:
        parts = [self.inter()]
        while self.peek() == ("sym", "|"):
            self.take()
            parts.append(self.inter())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def inter(self) -> Regex:
        parts = [self.concatenation()]
        while self.peek() == ("sym", "&"):
            self.take()
            parts.append(self.concatenation())
        return parts[0] if len(parts) == 1 else Intersect(tuple(parts))

    _STARTERS = {"∅", "0", "1", "ε", "~", "("}

    def _starts_term(self) -> bool:
        tok = self.peek()
        if tok is None:
            return False
        kind, val = tok
        if kind == "name":
            return True
        if val == ".":
            return True
        return val in self._STARTERS

    def concatenation(self) -> Regex:
        parts = [self.term()]
        while self._starts_term():
            if self.peek() == ("sym", "."):
                self.take()
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Concat(tuple(parts))

    def term(self) -> Regex:
        if self.peek() == ("sym", "~"):
            self.take()
            return Complement(self.term())
        r = self.atom()
        while self.peek() == ("sym", "*"):
            self.take()
            r = Star(r)
        return r

    def atom(self) -> Regex:
        kind, val = self.take()
        if kind == "name":
            return Letter(val)
        if val in ("∅", "0"):
            return Empty()
        if val in ("ε", "1"):
            return Epsilon()
        if val == "(":
            r = self.union()
            self.expect(")")
            return r
        raise InputError(f"unexpected {val!r} in regular expression")


def parse_regex(text: str) -> Regex:
    return _Parser(_tokenize(text)).parse()


def regex_letters(r: Regex) -> set[str]:
    if isinstance(r, Letter):
        return {r.name}
    if isinstance(r, (Concat, Union, Intersect)):
        out: set[str] = set()
        for p in r.parts:
            out |= regex_letters(p)
        return out
    if isinstance(r, Complement):
        return regex_letters(r.inner)
    if isinstance(r, Star):
        return regex_letters(r.inner)
    return set()


def regex_to_dfa(r: "Regex | str", alph: Alphabet) -> Dfa:
    """Compile to the canonical minimal DFA of the denoted language."""
    if isinstance(r, str):
        r = parse_regex(r)
    for name in regex_letters(r):
        if name not in alph:
            raise InputError(f"regex letter {name!r} not in alphabet {alph.letters}")
    return _compile(r, alph)


def _compile(r: Regex, alph: Alphabet) -> Dfa:
    if isinstance(r, Empty):
        return empty_language(alph)
    if isinstance(r, Epsilon):
        return epsilon_language(alph)
    if isinstance(r, Letter):
        return letter_language(alph, r.name)
    if isinstance(r, Concat):
        out = epsilon_language(alph)
        for p in r.parts:
            out = concat(out, _compile(p, alph))
        return out
    if isinstance(r, Union):
        out = empty_language(alph)
        for p in r.parts:
            out = union(out, _compile(p, alph))
        return out
    if isinstance(r, Intersect):
        parts = [_compile(p, alph) for p in r.parts]
        out = parts[0]
        for p in parts[1:]:
            out = intersection(out, p)
        return out
    if isinstance(r, Complement):
        return complement(_compile(r.inner, alph))
    if isinstance(r, Star):
        return star(_compile(r.inner, alph))
    raise InputError(f"unknown regex node {r!r}")


def render_regex(r: Regex) -> str:
    """Render an AST back to parseable text."""

    def name(n: str) -> str:
        return n if len(n) == 1 and n not in _RESERVED and not n.isspace() else f"'{n}'"

    def go(r: Regex, level: int) -> str:
        # level: 0 union, 1 intersect, 2 concat, 3 unary
        if isinstance(r, Empty):
            return "∅"
        if isinstance(r, Epsilon):
            return "ε"
        if isinstance(r, Letter):
            return name(r.name)
        if isinstance(r, Union):
            s = "|".join(go(p, 1) for p in r.parts)
            return f"({s})" if level > 0 else s
        if isinstance(r, Intersect):
            s = "&".join(go(p, 2) for p in r.parts)
            return f"({s})" if level > 1 else s
        if isinstance(r, Concat):
            s = " ".join(go(p, 3) for p in r.parts)
            return f"({s})" if level > 2 else s
        if isinstance(r, Complement):
            return f"~{go(r.inner, 3)}"
        if isinstance(r, Star):
            inner = go(r.inner, 3)
            if isinstance(r.inner, Complement):
                inner = f"({inner})"  # star binds tighter than complement
            return f"{inner}*"
        raise InputError(f"unknown regex node {r!r}")

    return go(r, 0)


# -- informational regex recovery ---------------------------------------


def _r_union(x: str | None, y: str | None) -> str | None:
    if x is None:
        return y
    if y is None:
        return x
    if x == y:
        return x
    return f"{x}|{y}"


def _r_concat(x: str | None, y: str | None) -> str | None:
    if x is None or y is None:
        return None
    if x == "ε":
        return y
    if y == "ε":
        return x
    xs = f"({x})" if "|" in x else x
    ys = f"({y})" if "|" in y else y
    return f"{xs}{ys}"


def _r_star(x: str | None) -> str | None:
    if x is None or x == "ε":
        return "ε"
    if len(x) == 1:
        return f"{x}*"
    return f"({x})*"


def dfa_to_regex(d: Dfa) -> str:
    """State elimination; informational rendering only (may be unsimplified)."""
    n = d.states
    init, fin = n, n + 1
    # labels[p][q]: regex string or None for no edge
    lab: list[list[str | None]] = [[None] * (n + 2) for _ in range(n + 2)]
    for p in range(n):
        for c, name in enumerate(d.alphabet.letters):
            tok = name if len(name) == 1 and name not in _RESERVED else f"'{name}'"
            lab[p][d.transitions[p][c]] = _r_union(lab[p][d.transitions[p][c]], tok)
    lab[init][d.initial] = "ε"
    for q in d.accepting:
        lab[q][fin] = "ε"
    order = list(range(n))
    alive = set(range(n + 2))
    for s in order:
        alive.discard(s)
        loop = _r_star(lab[s][s])
        for p in alive:
            if lab[p][s] is None:
                continue
            for q in alive:
                if lab[s][q] is None:
                    continue
                through = _r_concat(_r_concat(lab[p][s], loop), lab[s][q])
                lab[p][q] = _r_union(lab[p][q], through)
        for p in range(n + 2):
            lab[p][s] = None
            lab[s][p] = None
    out = lab[init][fin]
    return out if out is not None else "∅"
