"""Prime ideals of PPol([a,b]) and PPol^n([a,b]).

Every prime is one of

* ``M(t0)``      value zero at t0 (maximal),
* ``L(t0, k)``   value and first k left derivatives zero at t0,
* ``R(t0, k)``   the same with right derivatives,
* ``Lmin(t0)``   identically zero on a left neighbourhood of t0 (minimal),
* ``Rmin(t0)``   identically zero on a right neighbourhood (minimal).

Ideals are never materialised; every ideal-level statement reduces to the
membership predicate :func:`member`.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DomainMismatch,
    InvalidDescriptor,
    MinimalPrimeNotPrincipal,
    NotAMember,
    NotDisjoint,
    NotPositive,
    NoWitnessInterval,
    UnsupportedForMinimal,
    ZeroFunction,
)
from .exactnum import (
    AlgebraicNumber,
    Point,
    Polynomial,
    Scalar,
    compare,
    rational_between,
    sign,
    simplify_point,
    sturm_root_count,
)
from .piecewise import (
    INFINITY,
    Domain,
    PiecewisePoly,
    Side,
    _crossings,
    is_nonnegative,
    one_sided_jet,
    pw_abs,
    pw_hat,
    pw_inf,
    pw_pos,
    pw_sign_at,
    pw_sup,
    vanishing_order,
    zero_set,
)

UNBOUNDED = INFINITY


class Kind(str, enum.Enum):
    MAXIMAL = "M"
    LEFT_K = "L"
    RIGHT_K = "R"
    LEFT_MIN = "Lmin"
    RIGHT_MIN = "Rmin"

    @property
    def side(self) -> Side | None:
        if self in (Kind.LEFT_K, Kind.LEFT_MIN):
            return Side.LEFT
        if self in (Kind.RIGHT_K, Kind.RIGHT_MIN):
            return Side.RIGHT
        return None

    @property
    def minimal(self) -> bool:
        return self in (Kind.LEFT_MIN, Kind.RIGHT_MIN)


def _k_kind(side: Side) -> Kind:
    return Kind.LEFT_K if side is Side.LEFT else Kind.RIGHT_K


def _min_kind(side: Side) -> Kind:
    return Kind.LEFT_MIN if side is Side.LEFT else Kind.RIGHT_MIN


@dataclass(frozen=True, eq=False)
class PrimeDescriptor:
    kind: Kind
    t0: Point
    k: int | None
    domain: Domain

    def __post_init__(self) -> None:
        kind = Kind(self.kind)
        t0 = simplify_point(self.t0)
        d = self.domain
        if not d.contains(t0):
            raise InvalidDescriptor(f"t0 = {t0} outside [{d.a}, {d.b}]")
        side = kind.side
        if side is not None and not d.admissible(t0, side):
            raise InvalidDescriptor(f"{kind.value} prime needs t0 on the {side.name.lower()} interior, got {t0}")
        k = self.k
        if kind in (Kind.LEFT_K, Kind.RIGHT_K):
            if k is None or k < 1:
                raise InvalidDescriptor(f"{kind.value} prime needs k >= 1")
            if d.cap is not None:
                if k > d.cap:
                    raise InvalidDescriptor(f"k = {k} exceeds degree cap {d.cap}")
                if k == d.cap:
                    # a degree <= n piece vanishing to order n+1 is zero
                    kind, k = _min_kind(side), None
        else:
            k = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "t0", t0)
        object.__setattr__(self, "k", k)

    @classmethod
    def maximal(cls, t0: Point | Scalar, domain: Domain) -> PrimeDescriptor:
        return cls(Kind.MAXIMAL, t0, None, domain)

    @classmethod
    def left(cls, t0: Point | Scalar, k: int, domain: Domain) -> PrimeDescriptor:
        return cls(Kind.LEFT_K, t0, k, domain)

    @classmethod
    def right(cls, t0: Point | Scalar, k: int, domain: Domain) -> PrimeDescriptor:
        return cls(Kind.RIGHT_K, t0, k, domain)

    @classmethod
    def left_min(cls, t0: Point | Scalar, domain: Domain) -> PrimeDescriptor:
        return cls(Kind.LEFT_MIN, t0, None, domain)

    @classmethod
    def right_min(cls, t0: Point | Scalar, domain: Domain) -> PrimeDescriptor:
        return cls(Kind.RIGHT_MIN, t0, None, domain)

    @property
    def side(self) -> Side | None:
        return self.kind.side

    @property
    def level(self) -> int | float:
        """Position in the chain at t0: 0 for M, k for L/R, INFINITY for the minimal ones."""
        if self.kind is Kind.MAXIMAL:
            return 0
        if self.kind.minimal:
            return INFINITY
        return self.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeDescriptor):
            return NotImplemented
        return (
            self.kind is other.kind
            and self.k == other.k
            and self.domain == other.domain
            and compare(self.t0, other.t0) == 0
        )

    __hash__ = None  # type: ignore[assignment]

    def label(self) -> str:
        if self.k is not None:
            return f"{self.kind.value}:{self.t0}:{self.k}"
        return f"{self.kind.value}:{self.t0}"

    def __repr__(self) -> str:
        return f"Prime({self.label()})"


# ---------------------------------------------------------------- membership


def _check_same_domain(f: PiecewisePoly, P: PrimeDescriptor) -> None:
    if f.domain != P.domain:
        raise DomainMismatch(f"{f.domain} vs {P.domain}")


def member(f: PiecewisePoly, P: PrimeDescriptor) -> bool:
    _check_same_domain(f, P)
    if P.kind is Kind.MAXIMAL:
        return pw_sign_at(f, P.t0) == 0
    order = vanishing_order(f, P.t0, P.side)
    if P.kind.minimal:
        return order == INFINITY
    return order >= P.k + 1


def contains(P: PrimeDescriptor, Q: PrimeDescriptor) -> bool:
    """Whether the ideal of ``Q`` is a subset of the ideal of ``P``."""
    if P.domain != Q.domain:
        raise DomainMismatch(f"{P.domain} vs {Q.domain}")
    if compare(P.t0, Q.t0) != 0:
        return False
    if P.kind is Kind.MAXIMAL:
        return True
    if Q.kind is Kind.MAXIMAL or P.side is not Q.side:
        return False
    return P.level <= Q.level


@dataclass(frozen=True)
class Chain:
    primes: tuple[PrimeDescriptor, ...]
    truncated: bool = False

    @property
    def length(self) -> int:
        """Number of strict inclusions."""
        return len(self.primes) - 1

    def __iter__(self) -> Iterator[PrimeDescriptor]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


DEFAULT_CHAIN_CUTOFF = 8


def chain_above(P: PrimeDescriptor, cutoff: int | None = None) -> Chain:
    """All primes containing ``P``, ascending, ending at ``M(t0)``.

    Above a minimal prime of PPol the chain is infinite; only the ``cutoff``
    lowest L/R primes are listed and the result is flagged truncated.
    """
    d, t0 = P.domain, P.t0
    top = PrimeDescriptor.maximal(t0, d)
    if P.kind is Kind.MAXIMAL:
        return Chain((P,))
    side = P.side
    truncated = False
    if P.kind.minimal:
        if d.cap is not None:
            start = d.cap - 1
        else:
            start = DEFAULT_CHAIN_CUTOFF if cutoff is None else cutoff
            truncated = True
        below = [P]
    else:
        start = P.k - 1
        below = [P]
    below.extend(PrimeDescriptor(_k_kind(side), t0, k, d) for k in range(start, 0, -1))
    return Chain((*below, top), truncated)


def strictness_witness(smaller: PrimeDescriptor, larger: PrimeDescriptor) -> PiecewisePoly:
    """A function in ``larger`` but not in ``smaller`` for a strict same-side inclusion."""
    if not (contains(larger, smaller) and not contains(smaller, larger)):
        raise ValueError(f"{smaller} is not strictly contained in {larger}")
    d = larger.domain
    t0 = larger.t0
    if isinstance(t0, AlgebraicNumber):
        raise ValueError("strictness witnesses need a rational t0")
    return PiecewisePoly.poly(Polynomial.linear(1, t0) ** (larger.level + 1), d)


def verify_chain(chain: Chain | Sequence[PrimeDescriptor]) -> bool:
    """Check every consecutive inclusion is strict, symbolically and by a witness function."""
    primes = list(chain)
    for lo, hi in zip(primes, primes[1:]):
        if not contains(hi, lo) or contains(lo, hi):
            return False
        w = strictness_witness(lo, hi)
        if not member(w, hi) or member(w, lo):
            return False
    return True


@dataclass(frozen=True)
class ChainLength:
    length: int | float
    witness: Chain


def max_chain_length(d: Domain, request: int | None = None) -> ChainLength:
    """Longest ascending prime chain; UNBOUNDED for PPol with a witness of ``request`` inclusions."""
    t0 = (d.a + d.b) / 2
    if d.cap is not None:
        if d.cap == 0:
            return ChainLength(0, Chain((PrimeDescriptor.maximal(t0, d),)))
        return ChainLength(d.cap, chain_above(PrimeDescriptor.left_min(t0, d)))
    m = 1 if request is None else request
    if m < 1:
        raise ValueError("requested chain length must be positive")
    return ChainLength(UNBOUNDED, chain_above(PrimeDescriptor.left(t0, m, d)))


# ---------------------------------------------------------------- lexicographic images


@dataclass(frozen=True, eq=False)
class LexVector:
    """Finitely supported sequence under the lexicographic order."""

    entries: tuple[Point, ...] = ()

    def __post_init__(self) -> None:
        es = [simplify_point(e) for e in self.entries]
        while es and _point_sign(es[-1]) == 0:
            es.pop()
        object.__setattr__(self, "entries", tuple(es))

    def is_zero(self) -> bool:
        return not self.entries

    def __neg__(self) -> LexVector:
        return LexVector(tuple(-e for e in self.entries))

    def truncate(self, n: int) -> LexVector:
        return LexVector(self.entries[:n])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LexVector):
            return NotImplemented
        return lex_compare(self, other) == 0

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def _point_sign(x: Point) -> int:
    return compare(x, Fraction(0))


def lex_compare(u: LexVector, v: LexVector) -> int:
    n = max(len(u.entries), len(v.entries))
    zero = Fraction(0)
    for i in range(n):
        x = u.entries[i] if i < len(u.entries) else zero
        y = v.entries[i] if i < len(v.entries) else zero
        c = compare(x, y)
        if c:
            return c
    return 0


def lex_abs(u: LexVector) -> LexVector:
    if u.entries and _point_sign(u.entries[0]) < 0:
        return -u
    for e in u.entries:
        s = _point_sign(e)
        if s:
            return u if s > 0 else -u
    return u


def _signed_jet(f: PiecewisePoly, t0: Point, side: Side, order: int) -> tuple[Point, ...]:
    jet = one_sided_jet(f, t0, side, order)
    if side is Side.RIGHT:
        return jet.derivs
    return tuple(d if j % 2 == 0 else -d for j, d in enumerate(jet.derivs))


def phi_hom(f: PiecewisePoly, t0: Point | Scalar, side: Side | str, n: int | None = None) -> LexVector:
    """Signed one-sided jet of order ``n`` (default: the degree cap).

    Left derivatives carry the sign (-1)^j, right derivatives none, so the
    lexicographic sign of the image is the sign of ``f`` just beside ``t0``.
    """
    side = Side.parse(side)
    cap = f.domain.cap
    if n is None:
        if cap is None:
            raise ValueError("PPol mode needs an explicit jet order n")
        n = cap
    elif cap is not None and n != cap:
        raise ValueError(f"in PPol^{cap} mode the jet order is the cap")
    return LexVector(_signed_jet(f, simplify_point(t0), side, n))


def psi_hom(f: PiecewisePoly, t0: Point | Scalar, side: Side | str) -> LexVector:
    """Signed jet up to the degree of the piece governing the chosen side."""
    side = Side.parse(side)
    t0 = simplify_point(t0)
    piece = f.governing_piece(t0, side)
    return LexVector(_signed_jet(f, t0, side, max(piece.degree, 0)))


def quotient_image(f: PiecewisePoly, P: PrimeDescriptor) -> LexVector:
    """Image of ``f`` in the linearly ordered quotient E/P."""
    _check_same_domain(f, P)
    if P.kind.minimal:
        raise UnsupportedForMinimal("use psi_hom for minimal primes")
    if P.kind is Kind.MAXIMAL:
        side = Side.LEFT if f.domain.admissible(P.t0, Side.LEFT) else Side.RIGHT
        return LexVector(_signed_jet(f, P.t0, side, 0))
    return LexVector(_signed_jet(f, P.t0, P.side, P.k))


# ---------------------------------------------------------------- principal ideals


def principal_membership(g: PiecewisePoly, f: PiecewisePoly) -> bool:
    """Whether |g| <= lam |f| for some lam > 0."""
    if g.domain != f.domain:
        raise DomainMismatch(f"{g.domain} vs {f.domain}")
    zf = zero_set(f)
    if zf.is_empty():
        return True
    d = f.domain
    zg = zero_set(g)

    def orders_ok(z: Point, sides: Sequence[Side]) -> bool:
        for side in sides:
            if not d.admissible(z, side):
                continue
            if vanishing_order(g, z, side) < vanishing_order(f, z, side):
                return False
        return True

    for z in zf.isolated:
        if not zg.contains(z) or not orders_ok(z, (Side.LEFT, Side.RIGHT)):
            return False
    for u, v in zf.intervals:
        if not any(compare(U, u) <= 0 and compare(V, v) >= 0 for U, V in zg.intervals):
            return False
        if not orders_ok(u, (Side.LEFT,)) or not orders_ok(v, (Side.RIGHT,)):
            return False
    return True


def _local_factor(t0: AlgebraicNumber, d: Domain) -> tuple[Polynomial, Polynomial, Fraction, Fraction]:
    """Rational polynomials positive just left / right of an irrational t0, each with a simple zero there."""
    a = t0
    while not (d.a < a.lo and a.hi < d.b):
        a = a.bisect()
    p = a.defining
    left = p * sign(p(a.lo))
    right = p * sign(p(a.hi))
    return left, right, a.lo, a.hi


def synthesize_generator(P: PrimeDescriptor) -> PiecewisePoly:
    """A positive generator of a non-minimal prime ideal."""
    if P.kind.minimal:
        raise MinimalPrimeNotPrincipal(f"{P.label()} is minimal and not principal")
    d, t0 = P.domain, P.t0
    power = 1 if P.kind is Kind.MAXIMAL else P.k + 1
    lpow = power if P.kind is Kind.LEFT_K else 1
    rpow = power if P.kind is Kind.RIGHT_K else 1
    if isinstance(t0, AlgebraicNumber):
        left, right, lo, hi = _local_factor(t0, d)
        glued = PiecewisePoly(d, [t0], [left**lpow, right**rpow])
        cut = pw_pos(PiecewisePoly.poly(Polynomial.linear(-1, lo), d)) + pw_pos(
            PiecewisePoly.poly(Polynomial.linear(1, hi), d)
        )
        return pw_sup(pw_abs(glued), cut)
    if t0 == d.a:
        return PiecewisePoly.poly(Polynomial.linear(1, t0) ** rpow, d)
    if t0 == d.b:
        return PiecewisePoly.poly(Polynomial.linear(-1, t0) ** lpow, d)
    return PiecewisePoly(d, [t0], [Polynomial.linear(-1, t0) ** lpow, Polynomial.linear(1, t0) ** rpow])


def nonprincipal_witness(P: PrimeDescriptor, g: PiecewisePoly) -> PiecewisePoly:
    """An element of the minimal prime ``P`` outside the principal ideal of ``g``.

    ``g`` vanishes on a one-sided neighbourhood N of t0; a tent supported in
    the interior of N lies in ``P`` but is dominated by no multiple of ``g``.
    """
    if not P.kind.minimal:
        raise InvalidDescriptor(f"{P.label()} is not minimal; witnesses exist only for Lmin and Rmin")
    if not member(g, P):
        raise NotAMember(f"g is not in {P.label()}")
    t0, d = P.t0, P.domain
    zs = zero_set(g)
    for u, v in zs.intervals:
        if P.side is Side.LEFT and compare(u, t0) < 0 <= compare(v, t0):
            lo, hi = u, t0
            break
        if P.side is Side.RIGHT and compare(u, t0) <= 0 < compare(v, t0):
            lo, hi = t0, v
            break
    else:  # pragma: no cover - member() guarantees the interval
        raise NotAMember("no vanishing neighbourhood found")
    mid = rational_between(lo, hi)
    return pw_hat(d, rational_between(lo, mid), rational_between(mid, hi), 1)


def disjointness_prime_check(P: PrimeDescriptor, f: PiecewisePoly, g: PiecewisePoly) -> bool:
    if not pw_inf(pw_abs(f), pw_abs(g)).is_zero():
        raise NotDisjoint("|f| and |g| are not disjoint")
    return member(f, P) or member(g, P)


def order_dense_witness(P: PrimeDescriptor, f: PiecewisePoly) -> PiecewisePoly:
    """Some g with 0 < g <= f and g in ``P``: a tent on an interval avoiding t0 where f is bounded below."""
    _check_same_domain(f, P)
    if f.is_zero() or not is_nonnegative(f):
        raise NotPositive("order_dense_witness needs f >= 0, f != 0")
    d, t0 = f.domain, P.t0
    for lo, hi, piece in f.cells():
        if piece.is_zero():
            continue
        cuts = [lo, *_crossings(piece, lo, hi, d), hi]
        for s, e in zip(cuts, cuts[1:]):
            if compare(s, t0) < 0 < compare(e, t0):
                e = t0
            x0 = rational_between(s, e)
            left, right = rational_between(s, x0), rational_between(x0, e)
            height = piece(x0) / 2
            shifted = piece - height
            delta = min(x0 - left, right - x0)
            while True:
                j0, j1 = x0 - delta, x0 + delta
                if shifted(j0) > 0 and shifted(j1) > 0 and sturm_root_count(shifted, (j0, j1)) == 0:
                    return pw_hat(d, j0, j1, height)
                delta /= 2
    raise NoWitnessInterval("f has no positive cell")  # pragma: no cover


# ---------------------------------------------------------------- reports


@dataclass(frozen=True, eq=False)
class MaximalInterval:
    """M(t) for every t in the closed interval [u, v]."""

    u: Point
    v: Point

    def includes(self, P: PrimeDescriptor) -> bool:
        return P.kind is Kind.MAXIMAL and compare(self.u, P.t0) <= 0 <= compare(self.v, P.t0)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and compare(self.u, other.u) == 0 and compare(self.v, other.v) == 0


@dataclass(frozen=True, eq=False)
class AllPrimesInterval:
    """Every prime at every t in the open interval (u, v)."""

    u: Point
    v: Point

    def includes(self, P: PrimeDescriptor) -> bool:
        return compare(self.u, P.t0) < 0 < compare(self.v, P.t0)

    def __eq__(self, other: object) -> bool:
        return type(other) is type(self) and compare(self.u, other.u) == 0 and compare(self.v, other.v) == 0


@dataclass(frozen=True, eq=False)
class SideFamily:
    """All one-sided primes at t0: every L(t0, k) and Lmin(t0) (or the right-hand ones)."""

    t0: Point
    side: Side

    def includes(self, P: PrimeDescriptor) -> bool:
        return P.side is self.side and compare(P.t0, self.t0) == 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SideFamily) and self.side is other.side and compare(self.t0, other.t0) == 0


Family = MaximalInterval | AllPrimesInterval | SideFamily


@dataclass(frozen=True)
class PrimeReport:
    descriptors: tuple[PrimeDescriptor, ...] = ()
    families: tuple[Family, ...] = field(default=())

    def includes(self, P: PrimeDescriptor) -> bool:
        return any(P == Q for Q in self.descriptors) or any(fam.includes(P) for fam in self.families)


def primes_containing(f: PiecewisePoly) -> PrimeReport:
    """Symbolic, exact list of every prime ideal containing ``f``."""
    if f.is_zero():
        raise ZeroFunction("every prime contains the zero function")
    d = f.domain
    descs: list[PrimeDescriptor] = []
    fams: list[Family] = []

    def finite_side(z: Point, side: Side) -> None:
        if not d.admissible(z, side):
            return
        order = vanishing_order(f, z, side)
        for k in range(1, int(order)):
            descs.append(PrimeDescriptor(_k_kind(side), z, k, d))

    def full_side(z: Point, side: Side) -> None:
        if d.cap is None:
            fams.append(SideFamily(z, side))
            return
        for k in range(1, d.cap):
            descs.append(PrimeDescriptor(_k_kind(side), z, k, d))
        descs.append(PrimeDescriptor(_min_kind(side), z, None, d))

    zs = zero_set(f)
    events: list[tuple[Point, tuple[Point, Point] | None]] = [(z, None) for z in zs.isolated]
    events += [(u, (u, v)) for u, v in zs.intervals]
    events.sort(key=functools.cmp_to_key(lambda x, y: compare(x[0], y[0])))
    for z, interval in events:
        if interval is None:
            descs.append(PrimeDescriptor.maximal(z, d))
            finite_side(z, Side.LEFT)
            finite_side(z, Side.RIGHT)
            continue
        u, v = interval
        fams.append(MaximalInterval(u, v))
        fams.append(AllPrimesInterval(u, v))
        finite_side(u, Side.LEFT)
        full_side(u, Side.RIGHT)
        full_side(v, Side.LEFT)
        finite_side(v, Side.RIGHT)
    return PrimeReport(tuple(descs), tuple(fams))
