"""
Command-line front end.

    parabolic-r compute --n 9 --u 416273859 --v 671489253 --excluded 3..5 --method both
    parabolic-r stats --u 416273859 --v 671489253 --excluded 3..5
    parabolic-r enumerate --n 3 --J 2
    parabolic-r verify --suite conjecture --n 6

Exit codes: 0 success, 1 usage or precondition error, 2 disagreement or a
failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys

from .closed_form import ClosedFormError, IncreasingOrderError, r_closed
from .deodhar import RContext, XMode
from .perm import Permutation, PermutationError
from .quotient import (
    GeneratorSubset,
    ParabolicInterval,
    QuotientMembershipError,
    enumerate_quotient,
)
from .statistics import make_context
from .verify import (
    FAMILIES,
    conjecture_scan,
    verify_branch_overlap,
    verify_descent_independence,
    verify_duality,
    verify_family,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DISAGREE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for disagreement here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_J(p: argparse.ArgumentParser, required: bool) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--excluded", metavar="K..I",
                   help="J = S minus {s_K, ..., s_I}, e.g. 3..5")
    g.add_argument("--J", dest="J", metavar="LIST",
                   help="explicit generator indices in J, e.g. 1,2,4 ('' for J = {})")


def _perm(text: str, name: str, n: int | None) -> Permutation:
    try:
        w = Permutation.parse(text)
    except PermutationError as exc:
        raise UsageError(f"malformed permutation --{name} {text!r}: {exc}") from None
    if n is not None and w.n != n:
        raise UsageError(f"--{name} {w} has degree {w.n}, expected --n {n}")
    return w


def _resolve_J(args, n: int) -> tuple[GeneratorSubset | None, ParabolicInterval | None]:
    try:
        if getattr(args, "excluded", None):
            iv = ParabolicInterval.parse(n, args.excluded)
            return iv.generators(), iv
        if getattr(args, "J", None) is not None:
            J = GeneratorSubset.parse(n, args.J)
            return J, J.as_interval()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return None, None


def cmd_compute(args) -> int:
    u = _perm(args.u, "u", args.n)
    v = _perm(args.v, "v", args.n if args.n else u.n)
    n = u.n
    J, iv = _resolve_J(args, n)
    x = XMode.parse(args.x)
    result: dict = {"n": n, "u": str(u), "v": str(v), "J": sorted(J.included),
                    "excluded": iv.label() if iv else None, "x": x.value}
    try:
        if args.method in ("recursion", "both"):
            result["recursion"] = RContext(n, J, x).r_poly(u, v)
        if args.method in ("closed", "both"):
            if iv is None:
                raise UsageError(
                    "the closed form needs J of the form S minus {s_k..s_i}; "
                    f"J={{{J.label()}}} is not")
            result["closed"] = r_closed(u, v, iv, x)
    except QuotientMembershipError as exc:
        print(f"error: not in the quotient: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except IncreasingOrderError as exc:
        print(f"error: closed form does not apply: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ClosedFormError as exc:
        print(f"error: closed form failed: {exc}", file=sys.stderr)
        return EXIT_ERROR

    agree = None
    if args.method == "both":
        agree = result["recursion"] == result["closed"]
    if args.format == "json":
        out = {k: (val.to_json() if hasattr(val, "to_json") else val)
               for k, val in result.items()}
        if agree is not None:
            out["agree"] = agree
        print(json.dumps(out))
    elif args.method == "both":
        print(f"recursion: {result['recursion'].to_text()}")
        print(f"closed:    {result['closed'].to_text()}")
        print("AGREE" if agree else "DISAGREE")
    else:
        print(result[args.method].to_text())
    return EXIT_DISAGREE if agree is False else EXIT_OK


def cmd_stats(args) -> int:
    u = _perm(args.u, "u", args.n)
    v = _perm(args.v, "v", u.n)
    try:
        iv = ParabolicInterval.parse(u.n, args.excluded)
        ctx = make_context(u, v, iv)
    except QuotientMembershipError as exc:
        print(f"error: not in the quotient: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(json.dumps(ctx.as_dict()))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    J, _ = _resolve_J(args, args.n)
    elements = enumerate_quotient(args.n, J)
    if args.format == "json":
        print(json.dumps({
            "n": args.n,
            "J": sorted(J.included),
            "elements": [{"perm": list(w.entries), "length": w.length()} for w in elements],
        }))
    else:
        for w in elements:
            print(f"{w}\t{w.length()}")
    return EXIT_OK


def _parse_sample(text: str) -> tuple[int, int]:
    try:
        seed, count = text.split(":")
        return int(seed), int(count)
    except ValueError:
        raise UsageError(f"--sample expects SEED:COUNT, got {text!r}") from None


def _parse_pairs(items, n):
    pairs = []
    for item in items or []:
        try:
            a, b = item.split(":")
        except ValueError:
            raise UsageError(f"--pair expects U:V, got {item!r}") from None
        pairs.append((_perm(a, "pair", n).entries, _perm(b, "pair", n).entries))
    return pairs or None


def cmd_verify(args) -> int:
    n = args.n
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    try:
        if args.suite == "family":
            if not args.family:
                raise UsageError("--suite family needs --family")
            pairs = _parse_pairs(args.pair, n)
            if args.family == "conjecture":
                if not args.excluded:
                    raise UsageError("--family conjecture needs --excluded k..i")
                iv = ParabolicInterval.parse(n, args.excluded)
                report = verify_family(n, "conjecture", i=iv.i, k=iv.k,
                                       pairs=pairs, jobs=args.jobs)
            else:
                report = verify_family(n, args.family, i=args.i, pairs=pairs,
                                       jobs=args.jobs, max_quotient=args.max_quotient)
        elif args.suite in ("duality", "descent"):
            J, iv = _resolve_J(args, n)
            target = iv if iv is not None and args.excluded else J
            fn = verify_duality if args.suite == "duality" else verify_descent_independence
            report = fn(n, target, jobs=args.jobs)
        elif args.suite == "overlap":
            report = verify_branch_overlap(n, args.i, jobs=args.jobs)
        else:
            sample = _parse_sample(args.sample) if args.sample else None
            report = conjecture_scan(n, sample=sample, jobs=args.jobs,
                                     max_quotient=args.max_quotient)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="parabolic-r",
                 description="Parabolic Kazhdan-Lusztig R-polynomials of S_n.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="R-polynomial of one pair")
    p.add_argument("--n", type=int)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    _add_J(p, required=True)
    p.add_argument("--x", default="q", choices=["q", "-1"])
    p.add_argument("--method", default="recursion", choices=["recursion", "closed", "both"])
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("stats", help="A, B, a-vector and D of a pair, as JSON")
    p.add_argument("--n", type=int)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--excluded", required=True, metavar="K..I")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("enumerate", help="list the minimal coset representatives")
    p.add_argument("--n", type=int, required=True)
    _add_J(p, required=True)
    p.add_argument("--format", default="lines", choices=["lines", "json"])
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True,
                   choices=["family", "duality", "descent", "overlap", "conjecture"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--i", type=int)
    _add_J(p, required=False)
    p.add_argument("--sample", metavar="SEED:COUNT")
    p.add_argument("--pair", action="append", metavar="U:V",
                   help="restrict --suite family to these pairs (repeatable)")
    p.add_argument("--max-quotient", type=int,
                   help="skip quotients with more elements than this")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
