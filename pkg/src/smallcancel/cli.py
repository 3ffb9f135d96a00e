"""Command-line entry point.

Exit codes: 0 success (PASS, CERTIFIED, witness found), 1 FAIL / UNKNOWN /
NONE / EXHAUSTED, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .families import (
    FAMILY_NAMES,
    ExampleCF,
    FamilyError,
    FinitePresentation,
    GenerationBudgetExceeded,
    LevelFamily,
    RelatorFamily,
    derived_viable,
    gen_random_presentation,
    make_family,
)
from .formats import FormatError, atomic_writer, format_presentation, presentation_lines, read_presentation, read_word
from .oracle import OracleRefused, Presentation, brute_force_distance, dehn_reduce, are_equal
from .pieces import check_c_prime, check_c_prime_f, max_piece_lengths
from .rays import RayError, a_ray, build_caf_ray
from .rho import geodesic_criterion, intersection_profile
from .viable import REGISTRY, ViableFunction, corrected_example, literal_example, parse_table
from .words import Word, WordSyntaxError


class UsageError(Exception):
    pass


# --- helpers -------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise UsageError("lambda must be positive")
    return v


def _source(args) -> RelatorFamily:
    if args.input and args.family:
        raise UsageError("give either --input or --family, not both")
    if args.input:
        alphabet, rels, ids = read_presentation(args.input)
        return FinitePresentation(alphabet, rels, ids)
    if args.family:
        try:
            return make_family(args.family, N=args.N, L=args.L, k_max=args.k, i_max=args.imax)
        except FamilyError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("need --input or --family")


def _viable(name: str, i_max: int = 20) -> ViableFunction:
    if name in REGISTRY:
        return REGISTRY[name]()
    if name.startswith("viable-table:"):
        try:
            return parse_table(name.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    prefix, _, fam_name = name.partition(":")
    if prefix in ("derived", "cor-3-10") and fam_name:
        if fam_name != "example-cf":
            raise UsageError("the derived viable function is available for the example-cf family")
        fam = ExampleCF(max(i_max, 14))
        return derived_viable(corrected_example(), fam.lengths(), fam.first_index)
    raise UsageError(f"unknown viable function {name!r}")


def _truncation(args) -> float:
    return math.inf if args.truncate is None else args.truncate


def _word(args, alphabet) -> Word:
    if getattr(args, "word", None) is not None and getattr(args, "word_file", None):
        raise UsageError("give either --word or --word-file")
    if getattr(args, "word_file", None):
        w = read_word(args.word_file, alphabet)
    elif getattr(args, "word", None) is not None:
        w = alphabet.parse(args.word)
    else:
        raise UsageError("need --word or --word-file")
    if not w.is_reduced():
        raise UsageError("word is not freely reduced")
    return w


def _stamp(report: dict, args) -> dict:
    if not args.no_timestamp:
        report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    report["version"] = __version__
    return report


def _emit(text: str, args) -> None:
    if args.out:
        with atomic_writer(args.out) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(report: dict, args) -> None:
    _emit(json.dumps(_stamp(report, args), indent=2, sort_keys=True) + "\n", args)


def _trunc_json(t: float):
    return None if t == math.inf else t


# --- subcommands -------------------------------------------------------------


def cmd_verify(args) -> int:
    src = _source(args)
    if args.lambda_ and args.viable:
        raise UsageError("give either --lambda or --viable")
    S = src.symmetrized(_truncation(args))
    if len(S) == 0:
        raise UsageError("no relators within the truncation")
    report = max_piece_lengths(S)
    out: dict = {"command": "verify", "source": args.family or str(args.input),
                 "truncation": _trunc_json(S.truncation), "relator_count": len(S),
                 "max_piece": report.max_piece}
    if args.viable:
        f = _viable(args.viable, args.imax)
        v = check_c_prime_f(S, f, report)
        out.update(condition=f"C'(1/f) with f = {f.name}")
        out["entries"] = [e.to_json(src.alphabet, f(e.relator_len) * e.max_piece_len / e.relator_len)
                          for e in report.entries]
        if isinstance(src, ExampleCF) and args.viable != "literal-ex":
            out["literal_example_f"] = check_c_prime_f(S, literal_example(), report).label
    else:
        if args.lambda_:
            lam = _fraction(args.lambda_)
        elif args.family == "base-disjoint":
            lam = Fraction(1, 4 * args.N)
        else:
            lam = Fraction(1, 6)
        v = check_c_prime(S, lam, report)
        out.update(condition=f"C'({lam})", **{"lambda": str(lam)})
        out["entries"] = [e.to_json(src.alphabet) for e in report.entries]
    out["verdict"] = "PASS" if v.passed else "FAIL"
    out["truncated"] = S.omitted_min != math.inf
    out["worst"] = v.worst.to_json(src.alphabet) if v.worst else None
    out["worst_ratio"] = str(v.worst_ratio)
    if args.format == "text":
        _emit(f"{out['verdict']} {out['condition']} max_piece={report.max_piece} "
              f"worst_ratio={v.worst_ratio} relators={len(S)} truncation={out['truncation']}\n", args)
    else:
        _emit_json(out, args)
    return 0 if v.passed else 1


def cmd_rho(args) -> int:
    src = _source(args)
    w = _word(args, src.alphabet)
    S = src.symmetrized(_truncation(args))
    P = intersection_profile(w, S)
    if args.format == "json":
        _emit_json({"command": "rho", "word_len": len(w), "truncation": _trunc_json(S.truncation),
                    "rows": [dict(zip(("t", "rho", "witness_relator", "witness_len"), r)) for r in P.as_rows()]}, args)
    else:
        _emit(P.to_csv() if len(w) else "t,rho,witness_relator,witness_len\n", args)
    return 0


def cmd_geodesic(args) -> int:
    src = _source(args)
    w = _word(args, src.alphabet)
    T = _truncation(args)
    if args.truncate is None and not isinstance(src, FinitePresentation):
        T = max(3 * len(w) - 1, 0)
    cert = geodesic_criterion(w, src.symmetrized(T))
    out = {"command": "geodesic", "word_len": len(w), **cert.to_json(src.alphabet)}
    if args.format == "text":
        _emit(f"{cert.verdict} {cert.reason}\n", args)
    else:
        _emit_json(out, args)
    return 0 if cert.certified else 1


def cmd_ray(args) -> int:
    if args.construction == "a-ray":
        if args.family not in (None, "level-modified"):
            raise UsageError("the a-ray lives in the level-modified family")
        fam = LevelFamily(args.N, args.L, args.k, modified=True)
        w = a_ray(args.m, fam.tail_letter)
        meta = {"construction": "a-ray", "length": args.m}
        alphabet = fam.alphabet
    else:
        if args.family not in (None, "example-cf"):
            raise UsageError("the caf construction is implemented for example-cf")
        imax = args.imax
        fam = ExampleCF(max(imax, 14))
        try:
            ray = build_caf_ray(fam.members(), args.imin, imax, f=corrected_example())
        except RayError as exc:
            raise UsageError(str(exc)) from None
        w, meta, alphabet = ray.word, ray.to_json(), fam.alphabet
    text = alphabet.format(w) + "\n"
    if args.out:
        with atomic_writer(args.out) as fh:
            fh.write(text)
        with atomic_writer(str(args.out) + ".json") as fh:
            fh.write(json.dumps(_stamp(meta, args), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    if not args.input:
        raise UsageError("the oracle needs --input")
    alphabet, rels, ids = read_presentation(args.input)
    try:
        P = Presentation(alphabet, rels, ids)
    except OracleRefused as exc:
        raise UsageError(str(exc)) from None
    w = _word(args, alphabet)
    out: dict = {"command": "oracle", "mode": args.mode, "word": alphabet.format(w, powers=False)}
    code = 0
    if args.mode == "reduce":
        red, trace = dehn_reduce(w, P)
        out.update(reduced=alphabet.format(red, powers=False), trace=trace.to_json(alphabet))
    elif args.mode == "trivial":
        red, _ = dehn_reduce(w, P)
        out["trivial"] = len(red) == 0
    elif args.mode == "equal":
        if args.word2 is None:
            raise UsageError("--mode equal needs --word2")
        v = alphabet.parse(args.word2)
        out.update(word2=alphabet.format(v, powers=False), equal=are_equal(w, v, P))
    else:
        res = brute_force_distance(w, P, budget=args.budget, mode=args.search)
        out.update(status=res.status, tests=res.tests, distance=res.distance,
                   witness=alphabet.format(res.witness, powers=False) if res.witness is not None else None)
        if res.exhausted:
            code = 1
    if args.format == "text":
        _emit(" ".join(f"{k}={out[k]}" for k in sorted(out) if k != "trace") + "\n", args)
    else:
        _emit_json(out, args)
    return code


def cmd_family(args) -> int:
    if not args.family:
        raise UsageError("need --family")
    src = _source(args)
    members = src.members(_truncation(args))
    lines = presentation_lines(src.alphabet, members)
    if args.out:
        with atomic_writer(args.out) as fh:
            for line in lines:
                fh.write(line)
    else:
        for line in lines:
            sys.stdout.write(line)
    return 0


def cmd_random(args) -> int:
    lo, _, hi = args.length.partition("-")
    try:
        length = (int(lo), int(hi)) if hi else int(lo)
    except ValueError:
        raise UsageError(f"bad --length {args.length!r}") from None
    lam = _fraction(args.lambda_) if args.lambda_ else Fraction(1, 6)
    try:
        pres = gen_random_presentation(args.gens, args.relators, length, lam, args.seed, args.attempts)
    except GenerationBudgetExceeded as exc:
        sys.stderr.write(f"EXHAUSTED: {exc}\n")
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(format_presentation(pres.alphabet, pres.relators, pres.ids), args)
    return 0


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallcancel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="presentation file")
    common.add_argument("--family", choices=FAMILY_NAMES)
    common.add_argument("--N", type=int, default=28)
    common.add_argument("--L", type=int, default=None)
    common.add_argument("--k", type=int, default=3, help="highest level of the level families")
    common.add_argument("--imax", type=int, default=20, help="last index of example-cf")
    common.add_argument("--truncate", type=int, default=None, metavar="T")
    common.add_argument("--out", type=Path)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10**6)
    common.add_argument("--no-timestamp", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="check C'(lambda) or C'(1/f)")
    s.add_argument("--lambda", dest="lambda_")
    s.add_argument("--viable", help="constant-6, corrected-ex, literal-ex, derived:<family>, viable-table:...")
    s.set_defaults(func=cmd_verify)

    for name, func, helptext in (("rho", cmd_rho, "intersection profile as CSV"),
                                 ("geodesic", cmd_geodesic, "thirds criterion for geodesics")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--word")
        s.add_argument("--word-file", type=Path)
        s.set_defaults(func=func)
    sub.choices["rho"].set_defaults(format="csv")

    s = sub.add_parser("ray", parents=[common], help="build a ray prefix")
    s.add_argument("--construction", choices=("caf", "a-ray"), default="caf")
    s.add_argument("--imin", type=int, default=18)
    s.add_argument("--m", type=int, default=1000, help="length of the a-ray prefix")
    s.set_defaults(func=cmd_ray, imax=24)

    s = sub.add_parser("oracle", parents=[common], help="Dehn reduction and exact distances")
    s.add_argument("--word")
    s.add_argument("--word-file", type=Path)
    s.add_argument("--word2")
    s.add_argument("--mode", choices=("distance", "reduce", "trivial", "equal"), default="distance")
    s.add_argument("--search", choices=("pruned", "exhaustive"), default="pruned")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("family", parents=[common], help="write a generated family as a presentation file")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("random-pres", parents=[common], help="sample a random C'(lambda) presentation")
    s.add_argument("--gens", type=int, default=2)
    s.add_argument("--relators", type=int, default=1)
    s.add_argument("--length", default="12-24", help="length or lo-hi range")
    s.add_argument("--lambda", dest="lambda_")
    s.add_argument("--attempts", type=int, default=100000)
    s.set_defaults(func=cmd_random)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError, WordSyntaxError, FamilyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
