"""Command-line front end.

Exit codes: 0 on success, 2 when a library operation rejects its input,
1 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import atomic, spectrum
from .errors import DomainMismatch, InvalidDescriptor, RslError, SchemaError
from .exactnum import Point
from .expr import parse_to_pw
from .piecewise import (
    Domain,
    PiecewisePoly,
    Side,
    gauge_norm,
    one_sided_jet,
    pw_abs,
    pw_eval,
    pw_inf,
    pw_leq,
    pw_neg,
    pw_pos,
    pw_sup,
    vanishing_order,
    zero_set,
)
from .randgen import random_pw, resolve_seed
from .serialize import (
    chain_to_json,
    dumps,
    ideal_to_json,
    jet_to_json,
    lex_to_json,
    order_to_json,
    point_to_json,
    prime_from_json,
    prime_to_json,
    pw_from_json,
    pw_to_json,
    rational_from_str,
    rational_to_str,
    report_to_json,
    zero_set_to_json,
)

VERBS = ("eval", "lattice", "jet", "spectrum", "member", "generator", "witness", "chain", "norm", "atomic")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def _json_arg(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON argument: {exc}") from None


def parse_function(text: str, d: Domain) -> PiecewisePoly:
    """An expression, or a piecewise-polynomial JSON object on the same domain."""
    if not text.lstrip().startswith("{"):
        return parse_to_pw(text, d)
    f = pw_from_json(_json_arg(text))
    if f.domain != d:
        raise DomainMismatch(f"input is on {f.domain}, command runs on {d}")
    return f


def parse_prime(text: str, d: Domain) -> spectrum.PrimeDescriptor:
    """``M:t0``, ``L:t0:k``, ``R:t0:k``, ``Lmin:t0``, ``Rmin:t0``, or a descriptor JSON object."""
    if text.lstrip().startswith("{"):
        return prime_from_json(_json_arg(text), d)
    parts = text.split(":")
    try:
        kind = spectrum.Kind(parts[0])
    except ValueError:
        raise InvalidDescriptor(f"unknown prime kind {parts[0]!r}") from None
    needs_k = kind in (spectrum.Kind.LEFT_K, spectrum.Kind.RIGHT_K)
    if len(parts) != (3 if needs_k else 2):
        raise InvalidDescriptor(f"malformed prime descriptor {text!r}")
    t0 = rational_from_str(parts[1])
    k = None
    if needs_k:
        if not parts[2].isdigit():
            raise InvalidDescriptor(f"k must be a positive integer in {text!r}")
        k = int(parts[2])
    return spectrum.PrimeDescriptor(kind, t0, k, d)


def _rational_arg(s: str) -> Fraction:
    try:
        return rational_from_str(s)
    except RslError:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from None


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--domain", nargs=2, type=_rational_arg, metavar=("A", "B"), default=None)
    common.add_argument("--cap", type=int, default=None, help="degree cap n (selects PPol^n)")
    common.add_argument("--mode", choices=("ppol", "ppoln"), default=None)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--seed", type=int, default=None)

    parser = _Parser(prog="rsl", description="Prime spectra of piecewise-polynomial vector lattices.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="elaborate an expression; optionally evaluate it")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", type=_rational_arg, action="append", default=[])

    p = sub.add_parser("lattice", parents=[common], help="sup/inf/abs/pos/neg/add/sub")
    p.add_argument("--op", required=True, choices=("sup", "inf", "abs", "pos", "neg", "add", "sub", "zeros"))
    p.add_argument("--expr", required=True)
    p.add_argument("--other", help="second operand for sup, inf, add, sub")

    p = sub.add_parser("jet", parents=[common], help="one-sided jet and vanishing order")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", type=_rational_arg, required=True)
    p.add_argument("--side", choices=("L", "R"), required=True)
    p.add_argument("--order", type=int, default=None)

    p = sub.add_parser("spectrum", parents=[common], help="every prime ideal containing f")
    p.add_argument("--expr", required=True)

    p = sub.add_parser("member", parents=[common], help="membership of f in a prime")
    p.add_argument("--expr", required=True)
    p.add_argument("--prime", required=True)

    p = sub.add_parser("generator", parents=[common], help="principal generator of a prime")
    p.add_argument("--prime", required=True)
    p.add_argument("--samples", type=int, default=0, help="randomized equivalence checks to run")

    p = sub.add_parser("witness", parents=[common], help="non-principality or order-density witness")
    p.add_argument("--prime", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--type", choices=("nonprincipal", "order-dense"), default="nonprincipal")

    p = sub.add_parser("chain", parents=[common], help="chain of primes above P, or the maximal chain length")
    p.add_argument("--prime")
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--max", type=int, default=7, metavar="M", help="witness length for max_chain_length")

    p = sub.add_parser("norm", parents=[common], help="gauge norm of g with respect to f")
    p.add_argument("--expr", required=True, help="g")
    p.add_argument("--gauge", required=True, help="f >= 0")
    p.add_argument("--tol", type=_rational_arg, default=Fraction(1, 1000))

    p = sub.add_parser("atomic", parents=[common], help="ideals of the finite atomic lattice Q^m")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--vector", help="comma-separated rationals to test for being an atom")
    return parser


def _domain(args: argparse.Namespace) -> Domain:
    a, b = args.domain if args.domain else (Fraction(0), Fraction(1))
    cap = args.cap
    if args.mode == "ppoln" and cap is None:
        raise UsageError("--mode ppoln needs --cap")
    if args.mode == "ppol" and cap is not None:
        raise UsageError("--mode ppol conflicts with --cap")
    if cap is not None and cap < 0:
        raise UsageError("--cap must be non-negative")
    try:
        return Domain(a, b, cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- verbs


def _run_eval(args: argparse.Namespace, d: Domain) -> dict:
    f = parse_function(args.expr, d)
    out: dict[str, Any] = {"function": pw_to_json(f)}
    if args.at:
        out["values"] = [{"x": rational_to_str(x), "value": rational_to_str(pw_eval(f, x))} for x in args.at]
    return out


def _run_lattice(args: argparse.Namespace, d: Domain) -> dict:
    f = parse_function(args.expr, d)
    binary = {"sup": pw_sup, "inf": pw_inf, "add": lambda x, y: x + y, "sub": lambda x, y: x - y}
    unary = {"abs": pw_abs, "pos": pw_pos, "neg": pw_neg}
    if args.op == "zeros":
        return {"zero_set": zero_set_to_json(zero_set(f))}
    if args.op in binary:
        if args.other is None:
            raise UsageError(f"--op {args.op} needs --other")
        result = binary[args.op](f, parse_function(args.other, d))
    else:
        result = unary[args.op](f)
    return {"result": pw_to_json(result)}


def _run_jet(args: argparse.Namespace, d: Domain) -> dict:
    f = parse_function(args.expr, d)
    order = args.order
    if order is None:
        order = d.cap if d.cap is not None else max(f.max_degree, 0)
    jet = one_sided_jet(f, args.at, Side(args.side), order)
    return {
        "jet": jet_to_json(jet),
        "vanishing_order": order_to_json(vanishing_order(f, args.at, Side(args.side))),
        "psi": lex_to_json(spectrum.psi_hom(f, args.at, Side(args.side))),
    }


def _run_spectrum(args: argparse.Namespace, d: Domain) -> dict:
    f = parse_function(args.expr, d)
    return report_to_json(spectrum.primes_containing(f))


def _run_member(args: argparse.Namespace, d: Domain) -> dict:
    f = parse_function(args.expr, d)
    P = parse_prime(args.prime, d)
    return {"prime": prime_to_json(P), "member": spectrum.member(f, P)}


def _run_generator(args: argparse.Namespace, d: Domain) -> dict:
    P = parse_prime(args.prime, d)
    g = spectrum.synthesize_generator(P)
    out: dict[str, Any] = {"prime": prime_to_json(P), "generator": pw_to_json(g)}
    if args.samples:
        rng = random.Random(resolve_seed(args.seed))
        anchors = [P.t0] if isinstance(P.t0, Fraction) else []
        agree = 0
        for _ in range(args.samples):
            u = random_pw(rng, d, anchors=anchors)
            agree += spectrum.member(u, P) == spectrum.principal_membership(u, g)
        out["equivalence"] = {"samples": args.samples, "agree": agree}
    return out


def _run_witness(args: argparse.Namespace, d: Domain) -> dict:
    P = parse_prime(args.prime, d)
    f = parse_function(args.expr, d)
    if args.type == "nonprincipal":
        h = spectrum.nonprincipal_witness(P, f)
        checks = {"member": spectrum.member(h, P), "dominated_by_g": spectrum.principal_membership(h, f)}
    else:
        h = spectrum.order_dense_witness(P, f)
        checks = {"member": spectrum.member(h, P), "below_f": pw_leq(h, f)}
    return {"prime": prime_to_json(P), "witness": pw_to_json(h), "checks": checks}


def _run_chain(args: argparse.Namespace, d: Domain) -> dict:
    if args.prime is None:
        result = spectrum.max_chain_length(d, args.max)
        return {
            "max_length": order_to_json(result.length),
            "witness": chain_to_json(result.witness),
            "verified": spectrum.verify_chain(result.witness),
        }
    P = parse_prime(args.prime, d)
    return chain_to_json(spectrum.chain_above(P, args.cutoff))


def _run_norm(args: argparse.Namespace, d: Domain) -> dict:
    g = parse_function(args.expr, d)
    f = parse_function(args.gauge, d)
    lo, hi = gauge_norm(g, f, args.tol)
    return {"lo": rational_to_str(lo), "hi": rational_to_str(hi), "tol": rational_to_str(args.tol)}


def _run_atomic(args: argparse.Namespace, d: Domain) -> dict:
    m = args.dim
    if not 1 <= m <= atomic.MAX_DIM:
        raise UsageError(f"--dim must be between 1 and {atomic.MAX_DIM}")
    ideals = []
    for I in atomic.enumerate_ideals(m):
        c = atomic.classify_ideal(I)
        ideals.append(
            {**ideal_to_json(I), "class": c.kind.value, "minimal_prime": c.minimal_prime,
             "witness": list(c.witness) if c.witness else None}
        )
    out: dict[str, Any] = {"dim": m, "ideals": ideals, "chain": [ideal_to_json(J) for J in atomic.noetherian_chain_demo(m)]}
    if args.vector is not None:
        try:
            v = atomic.FinVec(tuple(rational_from_str(x) for x in args.vector.split(",")))
        except RslError as exc:
            raise UsageError(str(exc)) from None
        if v.dim != m:
            raise UsageError(f"--vector has {v.dim} entries, expected {m}")
        i = atomic.atom_check(v)
        out["atom"] = i
        out["complement"] = ideal_to_json(atomic.disjoint_complement(i, m)) if i else None
    return out


_RUNNERS = {
    "eval": _run_eval,
    "lattice": _run_lattice,
    "jet": _run_jet,
    "spectrum": _run_spectrum,
    "member": _run_member,
    "generator": _run_generator,
    "witness": _run_witness,
    "chain": _run_chain,
    "norm": _run_norm,
    "atomic": _run_atomic,
}


# ---------------------------------------------------------------- text output


def _fmt(x: Any) -> str:
    if isinstance(x, dict) and set(x) == {"poly", "lo", "hi"}:
        return f"root of [{', '.join(x['poly'])}] in ({x['lo']}, {x['hi']})"
    if isinstance(x, dict) and {"kind", "t0", "k"} == set(x):
        return spectrum_label(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    if x is None:
        return "-"
    return str(x)


def spectrum_label(p: dict) -> str:
    t0 = _fmt(p["t0"])
    return f"{p['kind']}:{t0}:{p['k']}" if p["k"] is not None else f"{p['kind']}:{t0}"


def _table(rows: Sequence[tuple[str, str]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _pw_rows(f: dict, prefix: str = "") -> list[tuple[str, str]]:
    ends = [f["domain"]["a"], *(_fmt(b) for b in f["breakpoints"]), f["domain"]["b"]]
    rows = []
    for i, coeffs in enumerate(f["pieces"]):
        rows.append((f"{prefix}[{ends[i]}, {ends[i + 1]}]", "[" + ", ".join(coeffs) + "]"))
    return rows


def render_text(verb: str, data: dict) -> str:
    rows: list[tuple[str, str]] = []
    for key, value in data.items():
        if isinstance(value, dict) and {"domain", "breakpoints", "pieces"} == set(value):
            rows.extend(_pw_rows(value, f"{key} "))
        elif isinstance(value, list) and value and isinstance(value[0], dict) and "kind" in value[0]:
            rows.extend((key, spectrum_label(p)) for p in value)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            rows.extend((key, ", ".join(f"{k}={_fmt(v)}" for k, v in item.items())) for item in value)
        elif isinstance(value, dict) and {"kind", "t0", "k"} == set(value):
            rows.append((key, spectrum_label(value)))
        elif isinstance(value, dict):
            rows.extend((f"{key}.{k}", _fmt(v)) for k, v in value.items())
        else:
            rows.append((key, _fmt(value)))
    return _table(rows) if rows else "(empty)\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    json_mode = "--json" in argv
    try:
        args = parser.parse_args(argv)
        d = _domain(args)
        data = _RUNNERS[args.verb](args, d)
    except UsageError as exc:
        if json_mode:
            sys.stdout.write(dumps({"error": "UsageError", "detail": str(exc)}))
        else:
            sys.stderr.write(f"rsl: usage error: {exc}\n")
        return 1
    except RslError as exc:
        if json_mode:
            sys.stdout.write(dumps(exc.to_json()))
        else:
            sys.stderr.write(f"rsl: {exc.code}: {exc.detail}\n")
        return 2
    if args.json:
        sys.stdout.write(dumps(data))
    else:
        sys.stdout.write(render_text(args.verb, data))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
