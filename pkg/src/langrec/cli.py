"""Command-line interface.

Two subcommands:

``construct``: run one construction on file/regex inputs and write
canonical output files (DFAs and monoids in the JSON formats described
in the README).

``verify``: run a seeded verification campaign for one theorem-level
claim and emit a deterministic report (JSON lines by default).

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 resource ceiling exceeded, 4 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import (
    LanguageAlgebra,
    dual_recogniser,
    generate_algebra,
    schutz_sum,
)
from .campaigns import Report, VerificationCampaign, run_campaign
from .errors import InputError, LangrecError
from .languages import Alphabet, Dfa, Word, left_quotient, right_quotient
from .marking import exists_projection
from .monoids import FiniteMonoid, syntactic_monoid
from .regexes import dfa_to_regex, regex_to_dfa
from .schutz import BinarySchutz, UnarySchutz


def _parse_alphabet(spec: str | None) -> Alphabet:
    if not spec:
        raise InputError("this construction needs --alphabet (comma-separated letters)")
    return Alphabet(tuple(s for s in spec.split(",") if s))


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InputError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _load_dfa(args, which: str = "input") -> Dfa:
    path = getattr(args, which, None)
    if path:
        return Dfa.from_json_dict(_load_json(path))
    if which == "input" and args.regex is not None:
        return regex_to_dfa(args.regex, _parse_alphabet(args.alphabet))
    raise InputError(f"need --{which} FILE or --regex STR")


def _load_monoid(args, which: str = "input") -> FiniteMonoid:
    path = getattr(args, which, None)
    if not path:
        raise InputError(f"need --{which} FILE with a monoid table")
    return FiniteMonoid.from_json_dict(_load_json(path))


def _load_algebra(args, which: str = "input") -> LanguageAlgebra:
    path = getattr(args, which, None)
    if not path:
        raise InputError(f"need --{which} FILE with an algebra description")
    data = _load_json(path)
    try:
        alph = Alphabet(tuple(data["alphabet"]))
        semigroup = bool(data.get("semigroup", False))
        gens = []
        for g in data.get("generators", []):
            if isinstance(g, str):
                gens.append(regex_to_dfa(g, alph))
            elif isinstance(g, dict) and "dfa" in g:
                gens.append(Dfa.from_json_dict(g["dfa"]))
            elif isinstance(g, dict) and "dfa_file" in g:
                gens.append(Dfa.from_json_dict(_load_json(g["dfa_file"])))
            else:
                raise InputError(f"unreadable generator entry: {g!r}")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra file: {exc}") from exc
    return generate_algebra(gens, alph, semigroup=semigroup)


def _write(args, name: str, text: str) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")
    return path


def _dump(data: dict) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _write_algebra(args, prefix: str, alg: LanguageAlgebra) -> None:
    atom_files = []
    regexes = []
    for i, atom in enumerate(alg.atoms):
        name = f"{prefix}.atom{i:03d}.dfa.json"
        _write(args, name, _dump(atom.to_json_dict()))
        atom_files.append(name)
        regexes.append(dfa_to_regex(atom))
    manifest = {
        "alphabet": list(alg.alphabet.letters),
        "semigroup": alg.semigroup,
        "atom_files": atom_files,
        "atom_regexes": regexes,
        "atom_representatives": [w.text() for w in alg.atom_reps],
    }
    _write(args, f"{prefix}.json", _dump(manifest))
    print(f"{prefix}: {len(alg.atoms)} atoms over {{{','.join(alg.alphabet.letters)}}}")
    for i, r in enumerate(regexes):
        print(f"  atom {i:03d}: {r}")


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "synmon":
        l = _load_dfa(args)
        syn = syntactic_monoid(l)
        _write(args, "synmon.monoid.json", _dump(syn.monoid.to_json_dict()))
        _write(args, "synmon.recogniser.json", _dump({
            "alphabet": list(l.alphabet.letters),
            "letter_images": list(syn.morphism.letter_images),
            "accepting": sorted(syn.accepting),
            "monoid": syn.monoid.to_json_dict(),
        }))
        print(f"syntactic monoid: {syn.monoid.size} elements, "
              f"accepting {sorted(syn.accepting)}")
    elif kind == "quotient":
        l = _load_dfa(args)
        if args.word is None:
            raise InputError("quotient needs --word")
        w = Word.parse(l.alphabet, args.word)
        side = args.side or "left"
        result = left_quotient(w, l) if side == "left" else right_quotient(l, w)
        _write(args, "quotient.dfa.json", _dump(result.to_json_dict()))
        print(f"{side} quotient by {w.text()}: {result.states} states")
    elif kind == "exists":
        l = _load_dfa(args)
        result = exists_projection(l)
        _write(args, "exists.dfa.json", _dump(result.to_json_dict()))
        print(f"existential projection: {result.states} states, "
              f"regex {dfa_to_regex(result)}")
    elif kind == "schutz1":
        m = _load_monoid(args)
        product = UnarySchutz(m)
        bound = args.max_size if args.max_size is not None else 6
        mfm, _ = product.as_finite_monoid(max_base=bound)
        _write(args, "schutz1.monoid.json", _dump(mfm.to_json_dict()))
        print(f"unary product: {mfm.size} elements "
              f"({'semigroup' if m.is_semigroup else 'monoid'} mode)")
    elif kind == "schutz2":
        m = _load_monoid(args, "input")
        n = _load_monoid(args, "input2")
        product = BinarySchutz(m, n)
        bound = args.max_size if args.max_size is not None else 512
        mfm, _ = product.as_finite_monoid(max_carrier=bound)
        _write(args, "schutz2.monoid.json", _dump(mfm.to_json_dict()))
        print(f"binary product: {mfm.size} elements")
    elif kind == "algebra":
        alg = _load_algebra(args)
        _write_algebra(args, "algebra", alg)
    elif kind == "bsum":
        a1 = _load_algebra(args, "input")
        a2 = _load_algebra(args, "input2")
        _write_algebra(args, "bsum", schutz_sum(a1, a2))
    elif kind == "dualrec":
        alg = _load_algebra(args)
        dual = dual_recogniser(alg)
        _write(args, "dualrec.monoid.json", _dump(dual.monoid.to_json_dict()))
        _write(args, "dualrec.recogniser.json", _dump({
            "alphabet": list(alg.alphabet.letters),
            "letter_images": list(dual.tau.letter_images),
            "atom_representatives": [w.text() for w in dual.quotient.reps],
            "monoid": dual.monoid.to_json_dict(),
        }))
        print(f"dual recogniser: {dual.monoid.size} atoms")
    else:
        raise InputError(f"unknown construction {kind!r}")
    return 0


def _cmd_verify(args) -> int:
    campaign = VerificationCampaign(
        theorem=args.theorem,
        seed=args.seed,
        samples=args.samples,
        max_size=args.max_size,
        max_len=args.max_len,
    )
    report: Report = run_campaign(campaign)
    text = report.pretty() if args.pretty else report.json_lines()
    if args.out:
        _write(args, f"verify.{args.theorem}.{'txt' if args.pretty else 'jsonl'}", text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="langrec",
        description="finite recognisers, product constructions, and "
        "theorem-verification campaigns for regular languages",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="run one construction, write canonical files")
    c.add_argument("kind", choices=[
        "synmon", "quotient", "exists", "schutz1", "schutz2",
        "algebra", "bsum", "dualrec",
    ])
    c.add_argument("--alphabet", help="comma-separated letter names (with --regex)")
    c.add_argument("--input", help="input file (DFA / monoid / algebra JSON)")
    c.add_argument("--input2", help="second input file where applicable")
    c.add_argument("--regex", help="inline regular expression instead of --input")
    c.add_argument("--word", help="quotient word (w@i form is for marked words)")
    c.add_argument("--side", choices=["left", "right"], help="quotient side")
    c.add_argument("--max-size", type=int, help="materialisation bound override")
    c.add_argument("--out", default=".", help="output directory")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="run a seeded verification campaign")
    v.add_argument("theorem", choices=[
        "prop2", "thm4", "thm8", "cor9", "thm10", "thm11", "lemmas",
    ])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, help="instance count override")
    v.add_argument("--max-size", type=int, help="size bound override")
    v.add_argument("--max-len", type=int, help="word length bound override")
    group = v.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", default=True,
                       help="JSON-lines report (default)")
    group.add_argument("--pretty", action="store_true",
                       help="human-readable report")
    v.add_argument("--out", help="write the report into this directory")
    v.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LangrecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
