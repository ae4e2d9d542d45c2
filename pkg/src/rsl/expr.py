"""Expression language for piecewise polynomials.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' UINT)?
    base   := RATIONAL | 't' | '(' expr ')'
            | ('abs' | 'pos' | 'neg') '(' expr ')'
            | ('max' | 'min') '(' expr ',' expr ')'
            | 'piecewise' '{' segment (';' segment)* '}'
    segment := ('[' | '(') RATIONAL ',' RATIONAL (']' | ')') ':' expr

RATIONAL is ``123`` or ``123/456``; split points may carry a leading minus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DiscontinuousPiecewise, ParseError
from .exactnum import Polynomial
from .piecewise import Domain, PiecewisePoly, pw_abs, pw_eval, pw_inf, pw_neg, pw_pos, pw_sup


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class BinOp:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Segment:
    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool
    body: Expr


@dataclass(frozen=True)
class Piecewise:
    segments: tuple[Segment, ...]


Expr = Union[Num, Var, Neg, BinOp, Pow, Call, Piecewise]

UNARY = ("abs", "pos", "neg")
BINARY = ("max", "min")

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*^(),;:{}\[\]])
    """,
    re.VERBOSE,
)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, src: str) -> None:
        self.tokens = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.tok.line, self.tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("op", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.accept("*"):
            e = BinOp("*", e, self.factor())
        return e

    def factor(self) -> Expr:
        if self.accept("-"):
            return Neg(self.factor())
        base = self.base()
        if self.accept("^"):
            if self.tok.kind != "num" or "/" in self.tok.text:
                raise self.error("exponent must be a non-negative integer")
            n = int(self.tok.text)
            self.i += 1
            return Pow(base, n)
        return base

    def rational(self, allow_sign: bool = False) -> Fraction:
        negative = allow_sign and self.accept("-")
        if self.tok.kind != "num":
            raise self.error("expected a rational literal")
        try:
            value = Fraction(self.tok.text)
        except ZeroDivisionError:
            raise self.error("zero denominator") from None
        self.i += 1
        return -value if negative else value

    def base(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            return Num(self.rational())
        if tok.kind == "name":
            name = tok.text
            if name == "t":
                self.i += 1
                return Var()
            if name in UNARY or name in BINARY:
                self.i += 1
                self.expect("(")
                args = [self.expr()]
                if name in BINARY:
                    self.expect(",")
                    args.append(self.expr())
                self.expect(")")
                return Call(name, tuple(args))
            if name == "piecewise":
                self.i += 1
                return self.piecewise()
            raise self.error(f"unknown name {name!r}")
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")

    def piecewise(self) -> Piecewise:
        self.expect("{")
        starts = [self.tok]
        segments = [self.segment()]
        while self.accept(";"):
            starts.append(self.tok)
            segments.append(self.segment())
        self.expect("}")
        for s, tok in zip(segments, starts):
            if not s.lo < s.hi:
                raise ParseError(f"empty segment [{s.lo}, {s.hi}]", tok.line, tok.col)
        for left, right, tok in zip(segments, segments[1:], starts[1:]):
            if left.hi != right.lo:
                raise ParseError(f"segments do not meet: {left.hi} vs {right.lo}", tok.line, tok.col)
        return Piecewise(tuple(segments))

    def segment(self) -> Segment:
        if self.accept("["):
            lo_closed = True
        elif self.accept("("):
            lo_closed = False
        else:
            raise self.error("expected '[' or '(' to open a segment")
        lo = self.rational(allow_sign=True)
        self.expect(",")
        hi = self.rational(allow_sign=True)
        if self.accept("]"):
            hi_closed = True
        elif self.accept(")"):
            hi_closed = False
        else:
            raise self.error("expected ']' or ')' to close a segment")
        self.expect(":")
        return Segment(lo, hi, lo_closed, hi_closed, self.expr())


def parse_expr(src: str) -> Expr:
    return Parser(src).parse()


# ---------------------------------------------------------------- printing


def _lit(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def pretty(e: Expr) -> str:
    """Fully parenthesised source text that parses back to ``e``."""
    if isinstance(e, Num):
        if e.value < 0:
            return f"(-{_lit(-e.value)})"
        return _lit(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        return f"(-{pretty(e.arg)})"
    if isinstance(e, BinOp):
        return f"({pretty(e.left)} {e.op} {pretty(e.right)})"
    if isinstance(e, Pow):
        base = pretty(e.base)
        if not isinstance(e.base, (Num, Var)) or base.startswith("("):
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(pretty(a) for a in e.args)})"
    if isinstance(e, Piecewise):
        segs = []
        for s in e.segments:
            open_, close = "[" if s.lo_closed else "(", "]" if s.hi_closed else ")"
            segs.append(f"{open_}{_lit(s.lo)}, {_lit(s.hi)}{close}: {pretty(s.body)}")
        return "piecewise{" + "; ".join(segs) + "}"
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------- semantics


def eval_expr(e: Expr, x: Fraction) -> Fraction:
    """Direct pointwise evaluation, independent of elaboration."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -eval_expr(e.arg, x)
    if isinstance(e, BinOp):
        l, r = eval_expr(e.left, x), eval_expr(e.right, x)
        return l + r if e.op == "+" else l - r if e.op == "-" else l * r
    if isinstance(e, Pow):
        return eval_expr(e.base, x) ** e.exponent
    if isinstance(e, Call):
        vals = [eval_expr(a, x) for a in e.args]
        if e.name == "abs":
            return abs(vals[0])
        if e.name == "pos":
            return max(vals[0], Fraction(0))
        if e.name == "neg":
            return max(-vals[0], Fraction(0))
        return max(vals) if e.name == "max" else min(vals)
    if isinstance(e, Piecewise):
        for s in e.segments:
            if s.lo <= x <= s.hi:
                return eval_expr(s.body, x)
        raise ValueError(f"{x} outside every segment")
    raise TypeError(f"not an expression: {e!r}")


def elaborate(e: Expr, d: Domain) -> PiecewisePoly:
    """Lower an expression to a canonical piecewise polynomial on ``d``.

    Work happens in the uncapped lattice; the degree cap is enforced on the
    final value only.
    """
    free = Domain(d.a, d.b)
    f = _lower(e, free)
    return PiecewisePoly(d, f.breakpoints, f.pieces)


def _lower(e: Expr, d: Domain) -> PiecewisePoly:
    if isinstance(e, Num):
        return PiecewisePoly.const(e.value, d)
    if isinstance(e, Var):
        return PiecewisePoly.poly(Polynomial.identity(), d)
    if isinstance(e, Neg):
        return -_lower(e.arg, d)
    if isinstance(e, BinOp):
        l, r = _lower(e.left, d), _lower(e.right, d)
        return l + r if e.op == "+" else l - r if e.op == "-" else l * r
    if isinstance(e, Pow):
        return _lower(e.base, d) ** e.exponent
    if isinstance(e, Call):
        args = [_lower(a, d) for a in e.args]
        if e.name == "abs":
            return pw_abs(args[0])
        if e.name == "pos":
            return pw_pos(args[0])
        if e.name == "neg":
            return pw_neg(args[0])
        return pw_sup(*args) if e.name == "max" else pw_inf(*args)
    if isinstance(e, Piecewise):
        return _glue(e, d)
    raise TypeError(f"not an expression: {e!r}")


def _glue(e: Piecewise, d: Domain) -> PiecewisePoly:
    segs = e.segments
    if segs[0].lo != d.a or segs[-1].hi != d.b:
        raise DiscontinuousPiecewise(
            f"segments cover [{segs[0].lo}, {segs[-1].hi}], not the domain [{d.a}, {d.b}]"
        )
    bodies = [_lower(s.body, d) for s in segs]
    for s, left, right in zip(segs, bodies, bodies[1:]):
        c = s.hi
        lv, rv = pw_eval(left, c), pw_eval(right, c)
        if lv != rv:
            raise DiscontinuousPiecewise(
                f"discontinuity at {c}: left value {lv}, right value {rv}", point=c
            )
    bps: list = []
    pieces: list[Polynomial] = []
    for s, f in zip(segs, bodies):
        for lo, hi, p in f.cells():
            if hi <= s.lo or lo >= s.hi:
                continue
            if pieces:
                bps.append(max(lo, s.lo))
            pieces.append(p)
    return PiecewisePoly(d, bps, pieces)


def parse_to_pw(src: str, d: Domain) -> PiecewisePoly:
    return elaborate(parse_expr(src), d)
