"""Command line front end.

Exposes the calculator over plain text::

    whit bracket "d1(0,1)" "d2(0,-1)"
    whit act "d1(0,1)" "w"
    whit nf "d2(-1,2) d1(0,-1) h2 w"
    whit wvectors --cap 0,2 --entries "0,1;0,2" --kmax 2 --rmax 2 --psi 1,1,1
    whit reduce "h2 w"
    whit ideal "d1(0,-1) z w - 2 * d1(0,-1) w" --cap 0,3 --entries "0,1;0,2" \
        --kmax 2 --rmax 5 --psi 1,2,3
    whit quotient-act "d2(0,2)" "h2 w" --a 2 --psi 1,2,3
    whit probe "h2 w" --a 2 --psi 1,2,3
    whit verify lemma3.8.1 --random 20 --seed 7

Vector and operator arguments use the text grammar of ``textio``; an
argument starting with ``{`` is instead decoded from the JSON schema the
``--format json`` output produces.  ``--psi`` takes either ``symbolic``
or three comma-separated rationals (``p/q`` allowed); when absent, the
``WHIT_PSI`` environment variable is consulted before defaulting to
symbolic.

Exit codes: 0 success, 1 verification or probe failure, 2 malformed
input, 3 singular (zero or unspecialized where values are needed) type,
4 internal invariant violation.
"""

import argparse
import json
import os
import random
import sys

from .coeff import SingularPsi, ZPoly
from .liecore import LieElt, bracket, psi_eval
from .orders import Triple
from .textio import ParseError, parse_lie, parse_vector, parse_psi
from .wmod import ModuleVector, ZeroVector, NonDescent, act, degree_of
from .solver import (
    NonTermination,
    ProbeFailed,
    HypothesisViolated,
    Truncation,
    whittaker_space,
    reduce_to_whittaker,
    quotient_act,
    simplicity_probe,
    submodule_generator,
    RULES,
    LemmaInstance,
    verify_lemma,
    random_instance,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_INTERNAL = 4


def _psi_of(args):
    text = args.psi
    if text is None:
        text = os.environ.get("WHIT_PSI")
    if text is None:
        text = "symbolic"
    return parse_psi(text)


def _lie_arg(text):
    text = text.strip()
    if text.startswith("{"):
        try:
            return LieElt.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError("bad operator JSON: %s" % e, 0, ())
    return parse_lie(text)


def _vector_arg(text, psi):
    text = text.strip()
    if text.startswith("{"):
        try:
            return ModuleVector.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as e:
            raise ParseError("bad vector JSON: %s" % e, 0, ())
    return parse_vector(text, psi)


def _rational(text):
    from fractions import Fraction
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("expected a rational number, got %r" % text, 0, ())


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError("expected a,b with two integers, got %r" % text, 0, ())
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise ParseError("expected integers in %r" % text, 0, ())


def _entries(text):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            out.append(_pair(chunk))
    if not out:
        raise ParseError("the entry pool cannot be empty", 0, ())
    return out


def _truncation(args):
    return Truncation(cap=_pair(args.cap), entries=_entries(args.entries),
                      kmax=args.kmax, rmax=args.rmax, lmax=args.lmax)


def _emit(args, text_value, json_value):
    if args.format == "json":
        print(json.dumps(json_value))
    else:
        print(text_value)


def _triple_text(t: Triple) -> str:
    return "(%s, %s, %d)" % (t.lam, t.mu, t.k)


def _transcript_lines(transcript):
    lines = []
    for idx, step in enumerate(transcript, 1):
        lines.append("  %2d. rule %-7s op d%d(%d,%d)  psi %s  exponent %d  -> deg %s" % (
            idx, step.rule, step.i, step.alpha[0], step.alpha[1],
            step.psi_value, step.exponent, _triple_text(step.degree_after)))
    return lines


def _cmd_bracket(args):
    x = _lie_arg(args.x)
    y = _lie_arg(args.y)
    z = bracket(x, y)
    _emit(args, str(z), z.to_json())
    return EXIT_OK


def _cmd_act(args):
    psi = _psi_of(args)
    x = _lie_arg(args.x)
    v = _vector_arg(args.vector, psi)
    out = act(x, v, psi)
    _emit(args, str(out), out.to_json())
    return EXIT_OK


def _cmd_nf(args):
    psi = _psi_of(args)
    v = _vector_arg(args.vector, psi)
    _emit(args, str(v), v.to_json())
    return EXIT_OK


def _cmd_wvectors(args):
    psi = _psi_of(args)
    trunc = _truncation(args)
    space = whittaker_space(trunc, psi, threads=args.threads)
    if args.format == "json":
        print(json.dumps({"truncation": trunc.to_json(),
                          "size": len(space),
                          "space": [v.to_json() for v in space]}))
    else:
        print("%d whittaker vector(s) in the slice" % len(space))
        for v in space:
            print("  %s" % v)
    return EXIT_OK


def _cmd_reduce(args):
    psi = _psi_of(args)
    v = _vector_arg(args.vector, psi)
    poly, transcript = reduce_to_whittaker(v, psi, max_steps=args.max_steps)
    if args.format == "json":
        print(json.dumps({"poly": poly.to_json(),
                          "transcript": transcript.to_json()}))
    else:
        print("poly: %s" % poly)
        print("steps: %d" % len(transcript))
        for line in _transcript_lines(transcript):
            print(line)
    return EXIT_OK


def _cmd_ideal(args):
    psi = _psi_of(args)
    trunc = _truncation(args)
    gens = [_vector_arg(t, psi) for t in args.vectors]
    g = submodule_generator(gens, trunc, psi)
    _emit(args, str(g), {"poly": g.to_json()})
    return EXIT_OK


def _cmd_quotient_act(args):
    psi = _psi_of(args)
    x = _lie_arg(args.x)
    v = _vector_arg(args.vector, psi)
    out = quotient_act(x, v, _rational(args.a), psi)
    _emit(args, str(out), out.to_json())
    return EXIT_OK


def _cmd_probe(args):
    psi = _psi_of(args)
    v = _vector_arg(args.vector, psi)
    c = simplicity_probe(v, _rational(args.a), psi)
    _emit(args, str(c), c.to_json())
    if not c:
        return EXIT_MISMATCH
    return EXIT_OK


def _verify_target(text):
    name = text.strip().lower()
    if name == "all":
        return sorted(RULES)
    if name.startswith("lemma"):
        name = name[len("lemma"):]
    name = name.strip()
    if name not in RULES:
        raise ParseError(
            "unknown rule %r; use 'all' or one of %s" % (text, sorted(RULES)), 0, ())
    return [name]


def _cmd_verify(args):
    psi = _psi_of(args)
    idents = _verify_target(args.target)
    rng = random.Random(args.seed)
    reports = []
    for ident in idents:
        for trial in range(args.random):
            inst = random_instance(ident, rng)
            reports.append((trial, verify_lemma(inst, psi, stated=args.stated)))
    failures = sum(1 for _, r in reports if not r.passed)
    if args.format == "json":
        print(json.dumps({
            "mode": "stated" if args.stated else "verified",
            "failures": failures,
            "reports": [r.to_json() for _, r in reports],
        }))
    else:
        for trial, r in reports:
            status = "PASS" if r.passed else "FAIL"
            print("%-7s [%2d] match=%-5s filtration=%-5s %s" % (
                r.ident, trial, r.match, r.filtration_ok, status))
            for note in (r.errata if not trial else ()):
                print("          note: %s" % note)
        print("%d instance(s), %d failure(s)" % (len(reports), failures))
    return EXIT_MISMATCH if failures else EXIT_OK


def _add_common(sp):
    sp.add_argument("--format", choices=("text", "json"), default="text",
                    help="output format (default text)")
    sp.add_argument("--psi", default=None,
                    help="type values p1,p2,p3 (rationals) or 'symbolic'; "
                         "falls back to the WHIT_PSI environment variable")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker threads for slice assembly; the output "
                         "is identical for every value")


def _add_truncation_flags(sp):
    sp.add_argument("--cap", required=True, help="weight-sum cap a,b")
    sp.add_argument("--entries", required=True,
                    help="pool of partition entries, e.g. '0,1;0,2'")
    sp.add_argument("--kmax", type=int, required=True, help="largest h2 exponent")
    sp.add_argument("--rmax", type=int, required=True, help="largest z exponent")
    sp.add_argument("--lmax", type=int, default=None,
                    help="bound on the total number of partition entries "
                         "(required when the cap's first component is positive)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="whit",
        description="Exact Whittaker-module calculator for the derivation "
                    "algebra of the rank-two torus.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bracket", help="bracket of two Lie elements")
    sp.add_argument("x")
    sp.add_argument("y")
    _add_common(sp)
    sp.set_defaults(func=_cmd_bracket)

    sp = sub.add_parser("act", help="act by a Lie element on a vector")
    sp.add_argument("x")
    sp.add_argument("vector")
    _add_common(sp)
    sp.set_defaults(func=_cmd_act)

    sp = sub.add_parser("nf", help="normal form of a vector expression")
    sp.add_argument("vector")
    _add_common(sp)
    sp.set_defaults(func=_cmd_nf)

    sp = sub.add_parser("wvectors", help="whittaker vectors of a truncated slice")
    _add_truncation_flags(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_wvectors)

    sp = sub.add_parser("reduce", help="reduce a vector to a z-polynomial times w")
    sp.add_argument("vector")
    sp.add_argument("--max-steps", type=int, default=10000)
    _add_common(sp)
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("ideal", help="monic generator of a submodule's ideal")
    sp.add_argument("vectors", nargs="+")
    _add_truncation_flags(sp)
    _add_common(sp)
    sp.set_defaults(func=_cmd_ideal)

    sp = sub.add_parser("quotient-act", help="act in the quotient where z = a")
    sp.add_argument("x")
    sp.add_argument("vector")
    sp.add_argument("--a", required=True, help="rational value of z")
    _add_common(sp)
    sp.set_defaults(func=_cmd_quotient_act)

    sp = sub.add_parser("probe", help="simplicity probe in the quotient where z = a")
    sp.add_argument("vector")
    sp.add_argument("--a", required=True, help="rational value of z")
    _add_common(sp)
    sp.set_defaults(func=_cmd_probe)

    sp = sub.add_parser("verify", help="check congruence rules on random instances")
    sp.add_argument("target", help="'all', a rule id like 3.8.1, or lemma3.8.1")
    sp.add_argument("--random", type=int, default=5, metavar="N",
                    help="instances per rule (default 5)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--stated", action="store_true",
                    help="check the printed coefficients verbatim instead of "
                         "the computation-backed ones")
    _add_common(sp)
    sp.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return EXIT_PARSE
    except SingularPsi as e:
        print("singular type: %s" % e, file=sys.stderr)
        return EXIT_SINGULAR
    except (ZeroVector, ProbeFailed) as e:
        print("probe failure: %s" % e, file=sys.stderr)
        return EXIT_MISMATCH
    except (NonDescent, NonTermination, HypothesisViolated) as e:
        print("internal invariant violation: %s" % e, file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
