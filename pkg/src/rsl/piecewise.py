"""Continuous piecewise polynomials on a compact interval.

Values are kept in a canonical form (ascending breakpoints strictly inside the
domain, adjacent pieces distinct), so equality is structural.  Breakpoints are
rationals or real algebraic numbers; the latter appear as crossing points of
``sup``/``inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    DegreeCapExceeded,
    DiscontinuousPiecewise,
    DomainMismatch,
    NotInIdeal,
    NotPositive,
    OutOfDomain,
    SideNotAdmissible,
)
from .exactnum import (
    AlgebraicNumber,
    Point,
    Polynomial,
    Scalar,
    compare,
    evaluate,
    isolate_roots,
    rational_between,
    sign,
    sign_at,
    simplify_point,
    to_rational,
)

INFINITY = math.inf


class Side(str, enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    @classmethod
    def parse(cls, s: str | Side) -> Side:
        if isinstance(s, Side):
            return s
        key = s.strip().lower()
        if key in ("l", "left", "-"):
            return cls.LEFT
        if key in ("r", "right", "+"):
            return cls.RIGHT
        raise ValueError(f"unknown side {s!r}")


@dataclass(frozen=True)
class Domain:
    """The interval [a, b]; ``cap`` selects the degree-bounded lattice."""

    a: Fraction
    b: Fraction
    cap: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "b", to_rational(self.b))
        if not self.a < self.b:
            raise ValueError(f"empty domain [{self.a}, {self.b}]")
        if self.cap is not None and self.cap < 0:
            raise ValueError("degree cap must be non-negative")

    def contains(self, x: Point) -> bool:
        return compare(x, self.a) >= 0 and compare(x, self.b) <= 0

    def interior(self, x: Point) -> bool:
        return compare(x, self.a) > 0 and compare(x, self.b) < 0

    def admissible(self, t0: Point, side: Side) -> bool:
        if not self.contains(t0):
            return False
        if side is Side.LEFT:
            return compare(t0, self.a) > 0
        return compare(t0, self.b) < 0

    def check_side(self, t0: Point, side: Side) -> None:
        if not self.admissible(t0, side):
            raise SideNotAdmissible(f"side {side.value} not admissible at {t0} on [{self.a}, {self.b}]")

    def __str__(self) -> str:
        mode = "PPol" if self.cap is None else f"PPol^{self.cap}"
        return f"{mode}([{self.a}, {self.b}])"


def _same_point(x: Point, y: Point) -> bool:
    return compare(x, y) == 0


def _merge_points(xs: Sequence[Point], ys: Sequence[Point]) -> list[Point]:
    out: list[Point] = []
    i = j = 0
    while i < len(xs) or j < len(ys):
        if j >= len(ys):
            cand = xs[i]
            i += 1
        elif i >= len(xs):
            cand = ys[j]
            j += 1
        else:
            c = compare(xs[i], ys[j])
            if c <= 0:
                cand = xs[i]
                i += 1
                if c == 0:
                    j += 1
            else:
                cand = ys[j]
                j += 1
        out.append(cand)
    return out


class PiecewisePoly:
    """Element of PPol([a,b]) or PPol^n([a,b]) in canonical form.

    ``pieces[i]`` governs the closed cell between ``breakpoints[i-1]`` and
    ``breakpoints[i]`` (with the domain ends as outer cell limits).
    """

    __slots__ = ("domain", "breakpoints", "pieces")

    def __init__(
        self,
        domain: Domain,
        breakpoints: Iterable[Point | Scalar] = (),
        pieces: Iterable[Polynomial] = (),
        *,
        check: bool = True,
    ) -> None:
        bps = [simplify_point(b) for b in breakpoints]
        ps = list(pieces)
        if len(ps) != len(bps) + 1:
            raise ValueError(f"{len(bps)} breakpoints need {len(bps) + 1} pieces, got {len(ps)}")
        if check:
            prev: Point = domain.a
            for b in bps:
                if compare(b, prev) <= 0:
                    raise ValueError("breakpoints must be strictly ascending inside the domain")
                prev = b
            if bps and compare(bps[-1], domain.b) >= 0:
                raise ValueError("breakpoints must lie strictly inside the domain")
            if domain.cap is not None:
                for p in ps:
                    if p.degree > domain.cap:
                        raise DegreeCapExceeded(f"piece {p} has degree {p.degree} > cap {domain.cap}")
            for i, b in enumerate(bps):
                if sign_at(ps[i] - ps[i + 1], b) != 0:
                    raise DiscontinuousPiecewise(f"pieces disagree at breakpoint {b}", point=b)
        # merge adjacent identical pieces
        keep_bps: list[Point] = []
        keep_ps: list[Polynomial] = [ps[0]]
        for b, p in zip(bps, ps[1:]):
            if p == keep_ps[-1]:
                continue
            keep_bps.append(b)
            keep_ps.append(p)
        self.domain = domain
        self.breakpoints: tuple[Point, ...] = tuple(keep_bps)
        self.pieces: tuple[Polynomial, ...] = tuple(keep_ps)

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c: Scalar, domain: Domain) -> PiecewisePoly:
        return cls.poly(Polynomial.constant(c), domain)

    @classmethod
    def poly(cls, p: Polynomial, domain: Domain) -> PiecewisePoly:
        if domain.cap is not None and p.degree > domain.cap:
            raise DegreeCapExceeded(f"degree {p.degree} exceeds cap {domain.cap}")
        return cls(domain, (), (p,), check=False)

    @classmethod
    def zero(cls, domain: Domain) -> PiecewisePoly:
        return cls(domain, (), (Polynomial(),), check=False)

    # -- structure ----------------------------------------------------

    def cells(self) -> list[tuple[Point, Point, Polynomial]]:
        ends: list[Point] = [self.domain.a, *self.breakpoints, self.domain.b]
        return [(ends[i], ends[i + 1], p) for i, p in enumerate(self.pieces)]

    def is_zero(self) -> bool:
        return len(self.pieces) == 1 and self.pieces[0].is_zero()

    @property
    def max_degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.pieces == other.pieces
            and len(self.breakpoints) == len(other.breakpoints)
            and all(_same_point(x, y) for x, y in zip(self.breakpoints, other.breakpoints))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.breakpoints:
            return f"PiecewisePoly({self.pieces[0]} on {self.domain})"
        parts = [f"[{l}, {r}]: {p}" for l, r, p in self.cells()]
        return f"PiecewisePoly({'; '.join(parts)} on {self.domain})"

    def _check_domain(self, other: PiecewisePoly) -> None:
        if self.domain != other.domain:
            raise DomainMismatch(f"{self.domain} vs {other.domain}")

    # -- pointwise combination ----------------------------------------

    def _combine(
        self,
        other: PiecewisePoly,
        op: Callable[[Polynomial, Polynomial], Polynomial],
        cap: int | None,
    ) -> PiecewisePoly:
        self._check_domain(other)
        grid = _merge_points(self.breakpoints, other.breakpoints)
        pieces = []
        i = j = 0
        for k in range(len(grid) + 1):
            pieces.append(op(self.pieces[i], other.pieces[j]))
            if k < len(grid):
                if i < len(self.breakpoints) and _same_point(self.breakpoints[i], grid[k]):
                    i += 1
                if j < len(other.breakpoints) and _same_point(other.breakpoints[j], grid[k]):
                    j += 1
        dom = self.domain
        if cap is not None and dom.cap is not None and any(p.degree > dom.cap for p in pieces):
            raise DegreeCapExceeded(f"result exceeds degree cap {dom.cap}")
        return PiecewisePoly(dom, grid, pieces, check=False)

    def __add__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self._combine(other, lambda p, q: p + q, None)

    def __sub__(self, other: PiecewisePoly) -> PiecewisePoly:
        return self._combine(other, lambda p, q: p - q, None)

    def __neg__(self) -> PiecewisePoly:
        return self.scale(-1)

    def scale(self, c: Scalar) -> PiecewisePoly:
        c = to_rational(c)
        if c == 0:
            return PiecewisePoly.zero(self.domain)
        return PiecewisePoly(self.domain, self.breakpoints, [p * c for p in self.pieces], check=False)

    def __mul__(self, other: PiecewisePoly | Scalar) -> PiecewisePoly:
        if isinstance(other, PiecewisePoly):
            return self._combine(other, lambda p, q: p * q, self.domain.cap)
        return self.scale(other)

    __rmul__ = __mul__

    def map_pieces(self, fn: Callable[[Polynomial], Polynomial]) -> PiecewisePoly:
        """Apply ``fn`` piecewise; the caller guarantees continuity is preserved."""
        pieces = [fn(p) for p in self.pieces]
        if self.domain.cap is not None and any(p.degree > self.domain.cap for p in pieces):
            raise DegreeCapExceeded(f"result exceeds degree cap {self.domain.cap}")
        return PiecewisePoly(self.domain, self.breakpoints, pieces, check=False)

    def __pow__(self, n: int) -> PiecewisePoly:
        return self.map_pieces(lambda p: p**n)

    # -- location ----------------------------------------------------

    def piece_index(self, x: Point, side: Side = Side.LEFT) -> int:
        """Index of the piece governing a one-sided neighbourhood of ``x``.

        At a breakpoint both adjacent pieces agree on the value; ``side``
        chooses which one governs.  At the domain ends the only piece is used.
        """
        if not self.domain.contains(x):
            raise OutOfDomain(f"{x} outside [{self.domain.a}, {self.domain.b}]")
        idx = 0
        for b in self.breakpoints:
            c = compare(b, x)
            if c < 0 or (c == 0 and side is Side.RIGHT):
                idx += 1
            else:
                break
        return idx

    def governing_piece(self, t0: Point, side: Side) -> Polynomial:
        self.domain.check_side(t0, side)
        return self.pieces[self.piece_index(t0, side)]

    def __call__(self, x: Scalar) -> Fraction:
        return pw_eval(self, x)


# ---------------------------------------------------------------- constructors


def pw_const(c: Scalar, d: Domain) -> PiecewisePoly:
    return PiecewisePoly.const(c, d)


def pw_poly(p: Polynomial, d: Domain) -> PiecewisePoly:
    return PiecewisePoly.poly(p, d)


def pw_linear_comb(c1: Scalar, f: PiecewisePoly, c2: Scalar, g: PiecewisePoly) -> PiecewisePoly:
    c1, c2 = to_rational(c1), to_rational(c2)
    return f._combine(g, lambda p, q: p * c1 + q * c2, None)


def pw_hat(d: Domain, left: Scalar, right: Scalar, height: Scalar) -> PiecewisePoly:
    """Piecewise-linear tent supported on [left, right] peaking at the midpoint."""
    left, right, height = to_rational(left), to_rational(right), to_rational(height)
    if not (d.a <= left < right <= d.b):
        raise ValueError("hat support must be a non-degenerate subinterval of the domain")
    mid = (left + right) / 2
    up = Polynomial.linear(height / (mid - left), left)
    down = Polynomial.linear(-height / (right - mid), right)
    zero = Polynomial()
    bps: list[Fraction] = []
    pieces: list[Polynomial] = []
    if left > d.a:
        pieces.append(zero)
        bps.append(left)
    pieces.append(up)
    bps.append(mid)
    pieces.append(down)
    if right < d.b:
        bps.append(right)
        pieces.append(zero)
    return PiecewisePoly(d, bps, pieces, check=False)


# ---------------------------------------------------------------- lattice


def _crossings(h: Polynomial, lo: Point, hi: Point, d: Domain) -> list[Point]:
    """Roots of ``h`` strictly between the cell ends ``lo < hi``."""
    roots = isolate_roots(h, (d.a, d.b))
    return [simplify_point(r) for r in roots if compare(r, lo) > 0 and compare(r, hi) < 0]


def pw_sup(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    """Pointwise maximum."""
    f._check_domain(g)
    d = f.domain
    grid = _merge_points(f.breakpoints, g.breakpoints)
    ends: list[Point] = [d.a, *grid, d.b]
    bps: list[Point] = []
    pieces: list[Polynomial] = []
    i = j = 0
    for k in range(len(grid) + 1):
        fp, gp = f.pieces[i], g.pieces[j]
        lo, hi = ends[k], ends[k + 1]
        h = fp - gp
        if h.is_zero():
            pieces.append(fp)
        else:
            cuts = _crossings(h, lo, hi, d)
            sub = [lo, *cuts, hi]
            for s in range(len(sub) - 1):
                probe = rational_between(sub[s], sub[s + 1])
                pieces.append(fp if h(probe) > 0 else gp)
                if s < len(cuts):
                    bps.append(cuts[s])
        if k < len(grid):
            bps.append(grid[k])
            if i < len(f.breakpoints) and _same_point(f.breakpoints[i], grid[k]):
                i += 1
            if j < len(g.breakpoints) and _same_point(g.breakpoints[j], grid[k]):
                j += 1
    return PiecewisePoly(d, bps, pieces, check=False)


def pw_inf(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    return -pw_sup(-f, -g)


def pw_abs(f: PiecewisePoly) -> PiecewisePoly:
    return pw_sup(f, -f)


def pw_pos(f: PiecewisePoly) -> PiecewisePoly:
    return pw_sup(f, PiecewisePoly.zero(f.domain))


def pw_neg(f: PiecewisePoly) -> PiecewisePoly:
    return pw_pos(-f)


def is_nonnegative(f: PiecewisePoly) -> bool:
    return pw_neg(f).is_zero()


def pw_leq(f: PiecewisePoly, g: PiecewisePoly) -> bool:
    return is_nonnegative(g - f)


# ---------------------------------------------------------------- evaluation


def pw_eval(f: PiecewisePoly, x: Scalar) -> Fraction:
    x = to_rational(x)
    return f.pieces[f.piece_index(x)](x)


def pw_sign_at(f: PiecewisePoly, x: Point | Scalar) -> int:
    if not isinstance(x, AlgebraicNumber):
        return sign(pw_eval(f, x))
    return sign_at(f.pieces[f.piece_index(x)], x)


@dataclass(frozen=True)
class Jet:
    point: Point
    side: Side
    derivs: tuple[Point, ...]


def one_sided_jet(f: PiecewisePoly, t0: Point | Scalar, side: Side | str, order: int) -> Jet:
    side = Side.parse(side)
    t0 = simplify_point(t0)
    piece = f.governing_piece(t0, side)
    derivs = tuple(simplify_point(evaluate(piece.derivative(j), t0)) for j in range(order + 1))
    return Jet(t0, side, derivs)


def vanishing_order(f: PiecewisePoly, t0: Point | Scalar, side: Side | str) -> int | float:
    """Smallest j with a non-zero one-sided j-th derivative at ``t0`` (INFINITY if none)."""
    side = Side.parse(side)
    t0 = simplify_point(t0)
    piece = f.governing_piece(t0, side)
    return poly_vanishing_order(piece, t0)


def poly_vanishing_order(p: Polynomial, t0: Point) -> int | float:
    if p.is_zero():
        return INFINITY
    if not isinstance(t0, AlgebraicNumber):
        for j, c in enumerate(p.taylor(to_rational(t0))):
            if c != 0:
                return j
    q = p
    j = 0
    while sign_at(q, t0) == 0:
        q = q.derivative()
        j += 1
    return j


# ---------------------------------------------------------------- zero sets


@dataclass(frozen=True)
class ZeroSet:
    isolated: tuple[Point, ...]
    intervals: tuple[tuple[Point, Point], ...]

    def is_empty(self) -> bool:
        return not self.isolated and not self.intervals

    def contains(self, x: Point) -> bool:
        if any(_same_point(x, z) for z in self.isolated):
            return True
        return any(compare(u, x) <= 0 <= compare(v, x) for u, v in self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZeroSet):
            return NotImplemented
        return (
            len(self.isolated) == len(other.isolated)
            and all(_same_point(x, y) for x, y in zip(self.isolated, other.isolated))
            and len(self.intervals) == len(other.intervals)
            and all(
                _same_point(u1, u2) and _same_point(v1, v2)
                for (u1, v1), (u2, v2) in zip(self.intervals, other.intervals)
            )
        )

    __hash__ = None  # type: ignore[assignment]


def zero_set(f: PiecewisePoly) -> ZeroSet:
    d = f.domain
    intervals: list[list[Point]] = []
    points: list[Point] = []
    for lo, hi, p in f.cells():
        if p.is_zero():
            if intervals and _same_point(intervals[-1][1], lo):
                intervals[-1][1] = hi
            else:
                intervals.append([lo, hi])
            continue
        if sign_at(p, lo) == 0:
            points.append(lo)
        points.extend(_crossings(p, lo, hi, d))
        if sign_at(p, hi) == 0:
            points.append(hi)
    isolated: list[Point] = []
    for z in points:
        if isolated and _same_point(isolated[-1], z):
            continue
        if any(compare(u, z) <= 0 <= compare(v, z) for u, v in intervals):
            continue
        isolated.append(z)
    return ZeroSet(tuple(isolated), tuple((u, v) for u, v in intervals))


# ---------------------------------------------------------------- gauge norm


def dominated(g: PiecewisePoly, f: PiecewisePoly, lam: Scalar) -> bool:
    """Exact test of |g| <= lam * f."""
    return pw_pos(pw_abs(g) - f.scale(lam)).is_zero()


def gauge_norm(g: PiecewisePoly, f: PiecewisePoly, tol: Scalar) -> tuple[Fraction, Fraction]:
    """Rational enclosure [lo, hi] of inf{lam > 0 : |g| <= lam f} with hi - lo <= tol.

    ``|g| <= hi * f`` holds exactly for the returned ``hi``.
    """
    from .spectrum import principal_membership

    tol = to_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    g._check_domain(f)
    if f.is_zero() or not is_nonnegative(f):
        raise NotPositive("gauge function must be positive and non-zero")
    if g.is_zero():
        return Fraction(0), Fraction(0)
    if not principal_membership(g, f):
        raise NotInIdeal("g is not in the ideal generated by f")
    lo, hi = Fraction(0), Fraction(1)
    while not dominated(g, f, hi):
        lo, hi = hi, hi * 2
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if dominated(g, f, mid):
            hi = mid
        else:
            lo = mid
    return lo, hi
