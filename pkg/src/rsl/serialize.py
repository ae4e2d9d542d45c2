"""JSON interchange formats.

``to_json`` maps library values to plain JSON data; the ``*_from_json``
functions invert it and raise :class:`SchemaError` on malformed input.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .atomic import CoordIdeal
from .errors import RslError, SchemaError
from .exactnum import AlgebraicNumber, Point, Polynomial
from .piecewise import Domain, Jet, PiecewisePoly, Side, ZeroSet
from .spectrum import (
    AllPrimesInterval,
    Chain,
    Kind,
    LexVector,
    MaximalInterval,
    PrimeDescriptor,
    PrimeReport,
    SideFamily,
)


def rational_to_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_str(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError(f"expected a rational string, got {s!r}")
    try:
        text = str(s).strip()
        if "." in text or "e" in text.lower():
            raise ValueError
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"malformed rational {s!r}") from None
    return value


def algebraic_to_json(a: AlgebraicNumber) -> dict:
    return {
        "poly": [rational_to_str(c) for c in a.defining.coeffs],
        "lo": rational_to_str(a.lo),
        "hi": rational_to_str(a.hi),
    }


def algebraic_from_json(data: Any) -> AlgebraicNumber:
    if not isinstance(data, dict) or set(data) != {"poly", "lo", "hi"}:
        raise SchemaError("algebraic number needs exactly the keys poly, lo, hi")
    poly = poly_from_json(data["poly"])
    try:
        return AlgebraicNumber.from_interval(poly, rational_from_str(data["lo"]), rational_from_str(data["hi"]))
    except (ValueError, RslError) as exc:
        raise SchemaError(f"invalid algebraic number: {exc}") from None


def point_to_json(x: Point) -> str | dict:
    if isinstance(x, AlgebraicNumber):
        if x.rational is not None:
            return rational_to_str(x.rational)
        return algebraic_to_json(x)
    return rational_to_str(x)


def point_from_json(data: Any) -> Point:
    if isinstance(data, dict):
        a = algebraic_from_json(data)
        return a.rational if a.rational is not None else a
    return rational_from_str(data)


def poly_to_json(p: Polynomial) -> list[str]:
    return [rational_to_str(c) for c in p.coeffs]


def poly_from_json(data: Any) -> Polynomial:
    if not isinstance(data, list):
        raise SchemaError("polynomial must be a list of coefficient strings")
    return Polynomial(rational_from_str(c) for c in data)


def domain_to_json(d: Domain) -> dict:
    return {"a": rational_to_str(d.a), "b": rational_to_str(d.b), "cap": d.cap}


def domain_from_json(data: Any) -> Domain:
    if not isinstance(data, dict) or not {"a", "b"} <= set(data) or set(data) - {"a", "b", "cap"}:
        raise SchemaError("domain needs keys a, b and optional cap")
    cap = data.get("cap")
    if cap is not None and (isinstance(cap, bool) or not isinstance(cap, int) or cap < 0):
        raise SchemaError(f"cap must be a non-negative integer or null, got {cap!r}")
    try:
        return Domain(rational_from_str(data["a"]), rational_from_str(data["b"]), cap)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def pw_to_json(f: PiecewisePoly) -> dict:
    return {
        "domain": domain_to_json(f.domain),
        "breakpoints": [point_to_json(b) for b in f.breakpoints],
        "pieces": [poly_to_json(p) for p in f.pieces],
    }


def pw_from_json(data: Any) -> PiecewisePoly:
    if not isinstance(data, dict) or set(data) != {"domain", "breakpoints", "pieces"}:
        raise SchemaError("piecewise polynomial needs exactly the keys domain, breakpoints, pieces")
    if not isinstance(data["breakpoints"], list) or not isinstance(data["pieces"], list):
        raise SchemaError("breakpoints and pieces must be lists")
    d = domain_from_json(data["domain"])
    bps = [point_from_json(b) for b in data["breakpoints"]]
    pieces = [poly_from_json(p) for p in data["pieces"]]
    try:
        f = PiecewisePoly(d, bps, pieces)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    if len(f.pieces) != len(pieces):
        raise SchemaError("piecewise polynomial is not canonical (adjacent pieces coincide)")
    return f


def prime_to_json(P: PrimeDescriptor) -> dict:
    return {"kind": P.kind.value, "t0": point_to_json(P.t0), "k": P.k}


def prime_from_json(data: Any, domain: Domain) -> PrimeDescriptor:
    if not isinstance(data, dict) or not {"kind", "t0"} <= set(data) or set(data) - {"kind", "t0", "k"}:
        raise SchemaError("prime descriptor needs keys kind, t0 and optional k")
    try:
        kind = Kind(data["kind"])
    except ValueError:
        raise SchemaError(f"unknown prime kind {data['kind']!r}") from None
    k = data.get("k")
    if k is not None and (isinstance(k, bool) or not isinstance(k, int)):
        raise SchemaError("k must be an integer or null")
    return PrimeDescriptor(kind, point_from_json(data["t0"]), k, domain)


def family_to_json(fam: Any) -> dict:
    if isinstance(fam, MaximalInterval):
        return {"maximal_interval": [point_to_json(fam.u), point_to_json(fam.v)]}
    if isinstance(fam, AllPrimesInterval):
        return {"all_primes_interval": [point_to_json(fam.u), point_to_json(fam.v)]}
    if isinstance(fam, SideFamily):
        return {"side_family": {"side": fam.side.value, "t0": point_to_json(fam.t0)}}
    raise TypeError(f"not a prime family: {fam!r}")


def family_from_json(data: Any) -> Any:
    if not isinstance(data, dict) or len(data) != 1:
        raise SchemaError("a family is a single-key object")
    ((key, body),) = data.items()
    if key in ("maximal_interval", "all_primes_interval"):
        if not isinstance(body, list) or len(body) != 2:
            raise SchemaError(f"{key} needs two endpoints")
        u, v = (point_from_json(x) for x in body)
        return MaximalInterval(u, v) if key == "maximal_interval" else AllPrimesInterval(u, v)
    if key == "side_family":
        if not isinstance(body, dict) or set(body) != {"side", "t0"}:
            raise SchemaError("side_family needs keys side, t0")
        try:
            side = Side(body["side"])
        except ValueError:
            raise SchemaError(f"unknown side {body['side']!r}") from None
        return SideFamily(point_from_json(body["t0"]), side)
    raise SchemaError(f"unknown family {key!r}")


def report_to_json(r: PrimeReport) -> dict:
    return {
        "descriptors": [prime_to_json(P) for P in r.descriptors],
        "families": [family_to_json(f) for f in r.families],
    }


def report_from_json(data: Any, domain: Domain) -> PrimeReport:
    if not isinstance(data, dict) or set(data) != {"descriptors", "families"}:
        raise SchemaError("report needs keys descriptors, families")
    return PrimeReport(
        tuple(prime_from_json(p, domain) for p in data["descriptors"]),
        tuple(family_from_json(f) for f in data["families"]),
    )


def chain_to_json(c: Chain) -> dict:
    return {"chain": [prime_to_json(P) for P in c.primes], "length": c.length, "truncated": c.truncated}


def lex_to_json(v: LexVector) -> list:
    return [point_to_json(e) for e in v.entries]


def lex_from_json(data: Any) -> LexVector:
    if not isinstance(data, list):
        raise SchemaError("lex vector must be a list")
    return LexVector(tuple(point_from_json(e) for e in data))


def jet_to_json(j: Jet) -> dict:
    return {"point": point_to_json(j.point), "side": j.side.value, "derivs": [point_to_json(x) for x in j.derivs]}


def zero_set_to_json(z: ZeroSet) -> dict:
    return {
        "isolated": [point_to_json(x) for x in z.isolated],
        "intervals": [[point_to_json(u), point_to_json(v)] for u, v in z.intervals],
    }


def ideal_to_json(I: CoordIdeal) -> dict:
    return {"dim": I.dim, "support": sorted(I.support)}


def ideal_from_json(data: Any) -> CoordIdeal:
    if not isinstance(data, dict) or set(data) != {"dim", "support"}:
        raise SchemaError("coordinate ideal needs keys dim, support")
    dim, support = data["dim"], data["support"]
    if isinstance(dim, bool) or not isinstance(dim, int) or not isinstance(support, list):
        raise SchemaError("dim must be an integer and support a list")
    if any(isinstance(i, bool) or not isinstance(i, int) for i in support):
        raise SchemaError("support indices must be integers")
    try:
        return CoordIdeal(dim, frozenset(support))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def order_to_json(x: int | float) -> int | str:
    return "inf" if x == math.inf else int(x)


def to_json(value: Any) -> Any:
    """Plain JSON data for any public value type."""
    if isinstance(value, PiecewisePoly):
        return pw_to_json(value)
    if isinstance(value, AlgebraicNumber):
        return algebraic_to_json(value)
    if isinstance(value, Fraction):
        return rational_to_str(value)
    if isinstance(value, PrimeDescriptor):
        return prime_to_json(value)
    if isinstance(value, PrimeReport):
        return report_to_json(value)
    if isinstance(value, Chain):
        return chain_to_json(value)
    if isinstance(value, LexVector):
        return lex_to_json(value)
    if isinstance(value, Jet):
        return jet_to_json(value)
    if isinstance(value, ZeroSet):
        return zero_set_to_json(value)
    if isinstance(value, CoordIdeal):
        return ideal_to_json(value)
    if isinstance(value, Domain):
        return domain_to_json(value)
    if isinstance(value, Polynomial):
        return poly_to_json(value)
    raise TypeError(f"no JSON form for {type(value).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def serialize(value: Any) -> str:
    return dumps(to_json(value))


_DECODERS = {
    "rational": rational_from_str,
    "algebraic": algebraic_from_json,
    "polynomial": poly_from_json,
    "domain": domain_from_json,
    "piecewise": pw_from_json,
    "lex": lex_from_json,
    "ideal": ideal_from_json,
}


def deserialize(text: str, kind: str, domain: Domain | None = None) -> Any:
    """Inverse of :func:`serialize`; ``kind`` names the expected type.

    Prime descriptors and reports carry no domain of their own, so ``domain``
    is required for ``kind`` in ("prime", "report").
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if kind in ("prime", "report"):
        if domain is None:
            raise ValueError(f"decoding a {kind} needs a domain")
        return prime_from_json(data, domain) if kind == "prime" else report_from_json(data, domain)
    try:
        decoder = _DECODERS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    return decoder(data)
