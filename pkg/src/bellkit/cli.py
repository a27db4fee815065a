"""Command-line interface.

JSON output is one record per line on stdout, each shaped as

    {"schema_version": 1, "command": <subcommand>, "payload": {...}}

with exact integers throughout (never floats for coefficients or
counts). Validation problems produce a machine-readable error record on
stderr and exit code 2; usage errors exit with 64. Text-style formats
(ascii grids, shorthand, traditional notation, tables) print plain
lines instead of records.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import analysis, hadamard, inequality, lhv, polynomial
from .errors import BellkitError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        # let coefficient lists with a leading minus ("-2,-2,-2,2") and
        # negative rationals ("-1/2") pass as option values
        self._negative_number_matcher = re.compile(r"^-\d[-\d,/]*$")

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(command: str, payload: dict) -> None:
    record = {"schema_version": SCHEMA_VERSION, "command": command,
              "payload": payload}
    print(json.dumps(record, ensure_ascii=False))


def _emit_error(command: str, message: str) -> None:
    record = {"schema_version": SCHEMA_VERSION, "command": command,
              "error": {"message": message}}
    print(json.dumps(record, ensure_ascii=False), file=sys.stderr)


def _parse_int(text: str) -> int:
    """Accept decimal, 0x.., 0o.. and 0b.. integer literals."""
    try:
        return int(text, 0)
    except ValueError:
        raise BellkitError(f"not an integer: {text!r}") from None


def _parse_coeffs(text: str) -> inequality.CoefficientVector:
    try:
        values = [int(part) for part in text.split(",")]
    except ValueError:
        raise BellkitError(
            f"coefficients must be comma-separated integers: {text!r}"
        ) from None
    return inequality.CoefficientVector.from_ints(values)


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _vector_payload(code: int | None, v: inequality.CoefficientVector) -> dict:
    payload = {"n": v.n_sites}
    if code is not None:
        payload["c"] = code
    payload.update(
        coeffs=list(v.coeffs),
        bound=inequality.bound(v),
        terms=analysis.term_count(v),
    )
    return payload


# -- subcommand handlers ------------------------------------------------------

def _cmd_hadamard(args) -> int:
    matrix = hadamard.build(args.n)
    if args.format == "ascii":
        print(hadamard.ascii_grid(matrix))
    elif args.format == "pbm":
        sys.stdout.write(hadamard.pbm(matrix))
    else:
        _emit("hadamard", {
            "n": args.n,
            "order": matrix.order,
            "entries": matrix.entries.tolist(),
        })
    return EXIT_OK


def _cmd_gen(args) -> int:
    code = _parse_int(args.c)
    c = inequality.sign_vector_from_code(code, args.n)
    v = inequality.from_sign_vector(c)
    sf = inequality.standard_form(v)
    payload = _vector_payload(code, v)
    payload["standard_form"] = list(sf.coeffs)
    payload["standard_bound"] = inequality.bound(sf)
    if args.format == "text":
        print(inequality.to_traditional(sf))
    else:
        _emit("gen", payload)
    return EXIT_OK


def _cmd_enum(args) -> int:
    stream = inequality.enumerate_inequalities(
        args.n, stream=args.stream, jobs=args.jobs
    )
    for code, v in stream:
        out = inequality.standard_form(v) if args.standard_form else v
        if args.format == "shorthand":
            print("(" + ", ".join(str(c) for c in out.coeffs) + ")")
        elif args.format == "traditional":
            print(inequality.to_traditional(out))
        else:
            _emit("enum", _vector_payload(code, out))
    return EXIT_OK


def _poly_out(args, command: str, payload: dict, poly: polynomial.BellPolynomial) -> int:
    if args.format == "text":
        print(str(poly))
    else:
        payload["coeffs"] = list(poly.coeffs)
        payload["poly"] = str(poly)
        _emit(command, payload)
    return EXIT_OK


def _cmd_poly(args) -> int:
    if args.poly_command == "buv":
        index = polynomial.UVIndex(args.n, args.u, args.v)
        poly = polynomial.bell_poly(index)
        return _poly_out(args, "poly", {"n": args.n, "u": args.u, "v": args.v}, poly)
    if args.poly_command == "s":
        poly = polynomial.summand_poly(args.n, args.k)
        return _poly_out(args, "poly", {"n": args.n, "k": args.k}, poly)
    if args.poly_command == "bowtie":
        a = polynomial.from_coefficient_vector(_parse_coeffs(args.a))
        b = polynomial.from_coefficient_vector(_parse_coeffs(args.b))
        if args.n is not None and a.n_sites != args.n:
            raise BellkitError(
                f"--a has {a.n_sites} sites, but --n {args.n} was given"
            )
        poly = polynomial.bowtie(a, b)
        return _poly_out(args, "poly", {"n": poly.n_sites}, poly)
    # eval
    poly = polynomial.from_coefficient_vector(_parse_coeffs(args.coeffs))
    try:
        z = Fraction(args.z)
    except (ValueError, ZeroDivisionError):
        raise BellkitError(f"not a rational number: {args.z!r}") from None
    value = polynomial.evaluate(poly, z)
    payload = {
        "coeffs": list(poly.coeffs),
        "z": str(z),
        "value": str(Fraction(value)),
    }
    if args.format == "text":
        print(payload["value"])
    else:
        _emit("poly", payload)
    return EXIT_OK


def _cmd_verify(args) -> int:
    v = _parse_coeffs(args.coeffs)
    claimed = args.bound if args.bound is not None else inequality.bound(v)
    maximum = lhv.max_lhv(v, jobs=args.jobs)
    payload = {
        "n": v.n_sites,
        "coeffs": list(v.coeffs),
        "bound": inequality.bound(v),
        "claimed_bound": claimed,
        "max_lhv": maximum,
        "tight": maximum == claimed,
    }
    if args.format == "text":
        print(f"max_lhv {maximum}, claimed {claimed}, "
              f"tight {'true' if payload['tight'] else 'false'}")
    else:
        _emit("verify", payload)
    return EXIT_OK


def _cmd_singlet(args) -> int:
    setup = lhv.SingletSetup()
    table = lhv.expectation_table(setup, phi=args.phi)
    if args.format == "text":
        print(f"phi = {args.phi:.6f}")
        header = "      " + "  ".join(f"j={j}    " for j in range(3))
        print(header.rstrip())
        for i in range(3):
            row = "  ".join(f"{table[i, j]:+.4f}" for j in range(3))
            print(f"i={i}  {row}")
        print(f"mean = {table.mean():+.2e}")
    else:
        _emit("singlet", {
            "phi": args.phi,
            "thetas": list(setup.thetas),
            "etas": list(setup.etas),
            "table": table.tolist(),
            "mean": table.mean(),
        })
    return EXIT_OK


def _cmd_classify(args) -> int:
    report = analysis.classify(
        args.n,
        exhaustive=True if args.exhaustive else None,
        sample_size=args.sample,
        seed=args.seed,
        jobs=args.jobs,
    )
    payload = {
        "n": report.n_sites,
        "mode": report.mode,
        "total": report.total,
        "histogram": list(report.histogram),
        "full_term": report.full_term,
        "full_term_fraction": report.full_term_fraction,
        "trivial_classes": report.trivial_classes,
        "zero_counts": list(report.zero_counts),
    }
    if report.mode == "sample":
        payload["seed"] = report.seed
        payload["full_term_stderr"] = report.full_term_stderr
    if args.format == "text":
        print(f"n={report.n_sites} mode={report.mode} total={report.total}")
        print(f"full-term: {report.full_term} "
              f"({report.full_term_fraction:.6f}"
              + (f" +- {report.full_term_stderr:.6f}" if report.full_term_stderr
                 else "") + ")")
        if report.trivial_classes is not None:
            print(f"trivial classes: {report.trivial_classes}")
        nonzero = {t: c for t, c in enumerate(report.histogram) if c}
        print("terms histogram: " + ", ".join(f"{t}: {c}" for t, c in nonzero.items()))
        print("zero counts: " + ", ".join(str(c) for c in report.zero_counts))
    else:
        _emit("classify", payload)
    return EXIT_OK


def _cmd_construct(args) -> int:
    members = analysis.max_b0_family(args.n, args.k)
    half = 1 << (args.n - 1)
    pairs = []
    for bit in range(half):
        for u in ((0,) if bit == 0 else (0, 1 << bit)):
            pairs.append((u, 1 << bit))
    for (u, v), poly in zip(pairs, members):
        if args.format == "text":
            print(str(poly))
        else:
            _emit("construct", {
                "n": args.n,
                "k": args.k,
                "u": u,
                "v": v,
                "coeffs": list(poly.coeffs),
                "poly": str(poly),
            })
    return EXIT_OK


def _cmd_identity(args) -> int:
    lhs, rhs = analysis.binomial_identity_sides(args.n)
    if args.format == "text":
        print(f"{lhs} == {rhs}: {'true' if lhs == rhs else 'false'}")
    else:
        _emit("identity", {"n": args.n, "lhs": lhs, "rhs": rhs,
                           "equal": lhs == rhs})
    return EXIT_OK


# -- parser wiring ------------------------------------------------------------

def _add_format(p: argparse.ArgumentParser, choices=("json", "text"),
                default: str = "json") -> None:
    p.add_argument("--format", choices=choices, default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hadamard", help="print a sign matrix")
    p.add_argument("--n", type=int, required=True)
    _add_format(p, choices=("ascii", "json", "pbm"), default="ascii")
    p.set_defaults(handler=_cmd_hadamard)

    p = sub.add_parser("gen", help="one inequality from a sign-vector bitmask")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", required=True,
                   help="bitmask (bit j set means c_j = -1); 0b/0x prefixes ok")
    _add_format(p)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("enum", help="enumerate the whole family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stream", action="store_true",
                   help="required beyond 4 sites (huge output)")
    p.add_argument("--standard-form", action="store_true")
    p.add_argument("--jobs", type=int, default=_default_jobs())
    _add_format(p, choices=("json", "shorthand", "traditional"))
    p.set_defaults(handler=_cmd_enum)

    p = sub.add_parser("poly", help="polynomial operations")
    poly_sub = p.add_subparsers(dest="poly_command", required=True)

    q = poly_sub.add_parser("buv", help="family member for a (u, v) pair")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--u", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_poly)

    q = poly_sub.add_parser("s", help="summand polynomial")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_poly)

    q = poly_sub.add_parser("bowtie", help="lift two polynomials one site up")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--a", required=True, help="comma-separated coefficients")
    q.add_argument("--b", required=True, help="comma-separated coefficients")
    _add_format(q)
    q.set_defaults(handler=_cmd_poly)

    q = poly_sub.add_parser("eval", help="exact evaluation at a rational point")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--z", required=True, help="rational, e.g. 2, -1, 1/2")
    _add_format(q)
    q.set_defaults(handler=_cmd_poly)

    p = sub.add_parser("verify", help="brute-force LHV bound of a vector")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("singlet", help="singlet expectation table")
    p.add_argument("--phi", type=float, default=0.0,
                   help="tilt of the second apparatus, radians")
    _add_format(p)
    p.set_defaults(handler=_cmd_singlet)

    p = sub.add_parser("classify", help="term-count census of the family")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("construct", help="special-member constructions")
    construct_sub = p.add_subparsers(dest="construct_command", required=True)
    q = construct_sub.add_parser(
        "max-b0", help="members maximizing the repeated-setting coefficient"
    )
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, choices=(0, 1), required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("identity", help="exact binomial identity check")
    p.add_argument("--n", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_identity)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except BellkitError as exc:
        _emit_error(args.command, str(exc))
        return EXIT_INVALID
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
