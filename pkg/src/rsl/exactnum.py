"""Exact scalars, univariate polynomials over Q, and real algebraic numbers.

Rationals are :class:`fractions.Fraction`.  Real roots are isolated with Sturm
sequences and bisection; an :class:`AlgebraicNumber` is a squarefree primitive
defining polynomial together with an open rational interval holding exactly one
of its roots.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import EndpointIsRoot

Rational = Fraction
Scalar = Union[int, Fraction]


def to_rational(x: Scalar | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


class Polynomial:
    """Immutable polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = hash(self.coeffs)

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls([c])

    @classmethod
    def identity(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def linear(cls, slope: Scalar, root: Scalar) -> Polynomial:
        """``slope * (t - root)``."""
        slope, root = to_rational(slope), to_rational(root)
        return cls([-slope * root, slope])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other: Polynomial | Scalar) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other: Polynomial | Scalar) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Polynomial | Scalar) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other: Polynomial | Scalar) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            c = to_rational(other)
            return Polynomial(c * x for x in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, order: int = 1) -> Polynomial:
        p = self
        for _ in range(order):
            p = Polynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return Polynomial(quot), Polynomial(rem[:dq])

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def monic(self) -> Polynomial:
        return self * (1 / self.lc) if self.coeffs else self

    def primitive(self) -> Polynomial:
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        den = functools.reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = functools.reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Polynomial(Fraction(c, g) for c in ints)

    def squarefree(self) -> Polynomial:
        """Primitive squarefree part (product of the distinct irreducible factors)."""
        if self.degree <= 0:
            return self.primitive()
        g = gcd(self, self.derivative())
        return (self // g).primitive()

    def taylor(self, center: Fraction) -> tuple[Fraction, ...]:
        """Coefficients of ``self`` expanded in powers of ``(t - center)``."""
        return self.compose(Polynomial([center, 1])).coeffs


def _as_poly(x: Polynomial | Scalar) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    return Polynomial.constant(x)


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd (zero if both are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def poly_arith(op: str, p: Polynomial, q: Polynomial | Scalar | None = None) -> Polynomial:
    """Dispatch table over the basic polynomial operations."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p * to_rational(q)
    if op == "derivative":
        return p.derivative()
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------- Sturm machinery


@functools.lru_cache(maxsize=4096)
def sturm_sequence(p: Polynomial) -> tuple[Polynomial, ...]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return tuple(seq)


def _variations(seq: Sequence[Polynomial], x: Fraction) -> int:
    count = 0
    last = 0
    for q in seq:
        s = sign(q(x))
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def sturm_root_count(p: Polynomial, interval: tuple[Scalar, Scalar]) -> int:
    """Number of distinct real roots of ``p`` in the open interval."""
    lo, hi = (to_rational(x) for x in interval)
    if p.is_zero():
        raise ValueError("zero polynomial has no finite root count")
    if lo >= hi:
        return 0
    for end in (lo, hi):
        if p(end) == 0:
            raise EndpointIsRoot(f"{end} is a root of {p}", point=end)
    seq = sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every real root of ``p`` has absolute value strictly below this."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(p: Polynomial, lo: Fraction, hi: Fraction) -> Fraction:
    """A non-root of ``p`` near the midpoint of (lo, hi)."""
    mid = (lo + hi) / 2
    if p(mid) != 0:
        return mid
    k = 3
    while True:
        for j in range(1, k):
            x = lo + (hi - lo) * Fraction(j, k)
            if p(x) != 0:
                return x
        k += 2


def _rational_candidate(p: Polynomial, lo: Fraction, hi: Fraction) -> Fraction | None:
    """The rational root of the primitive polynomial ``p`` in (lo, hi), if one exists.

    ``p`` must have exactly one root in (lo, hi).  A rational root has
    denominator dividing the leading coefficient, so once the interval is
    narrower than ``1/lc**2`` the best approximation with that bound is the
    only candidate.
    """
    lead = int(abs(p.lc))
    s_lo = sign(p(lo))
    while (hi - lo) * lead * lead >= 1:
        mid = (lo + hi) / 2
        v = p(mid)
        if v == 0:
            return mid
        if sign(v) == s_lo:
            lo = mid
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(max(lead, 1))
    if lo < cand < hi and p(cand) == 0:
        return cand
    return None


def _root_from_interval(sqf: Polynomial, lo: Fraction, hi: Fraction) -> AlgebraicNumber:
    r = _rational_candidate(sqf, lo, hi)
    if r is not None:
        return AlgebraicNumber(sqf, lo, hi, r)
    return AlgebraicNumber(sqf, lo, hi)


def isolate_roots(p: Polynomial, interval: tuple[Scalar, Scalar] | None = None) -> list[AlgebraicNumber]:
    """Distinct real roots of ``p`` in the closed interval, ascending.

    With ``interval=None`` all real roots are returned.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    sqf = p.squarefree()
    if sqf.degree <= 0:
        return []
    if interval is None:
        bound = cauchy_bound(sqf)
        lo, hi = -bound, bound
    else:
        lo, hi = (to_rational(x) for x in interval)
    if lo > hi:
        return []
    if lo == hi:
        return [AlgebraicNumber.from_rational(lo)] if sqf(lo) == 0 else []
    work = sqf
    for end in (lo, hi):
        if work(end) == 0:
            work = (work // Polynomial([-end, 1])).primitive()
    found: list[AlgebraicNumber] = []
    if work.degree >= 1:
        seq = sturm_sequence(work)
        stack = [(lo, hi)]
        while stack:
            l, r = stack.pop()
            n = _variations(seq, l) - _variations(seq, r)
            if n == 0:
                continue
            if n == 1:
                found.append(_root_from_interval(work, l, r))
                continue
            m = _split_point(work, l, r)
            stack.append((l, m))
            stack.append((m, r))
    found.sort(key=lambda a: a.lo)
    roots = [AlgebraicNumber.from_rational(lo)] if sqf(lo) == 0 else []
    roots.extend(found)
    if sqf(hi) == 0:
        roots.append(AlgebraicNumber.from_rational(hi))
    return roots


# ---------------------------------------------------------------- algebraic numbers


def _interval_eval(p: Polynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over the closed interval [lo, hi] (Horner form)."""
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi


@dataclass(frozen=True, eq=False)
class AlgebraicNumber:
    """A real root of ``defining`` isolated in the open interval (lo, hi).

    ``rational`` is populated whenever the root is rational.
    """

    defining: Polynomial
    lo: Fraction
    hi: Fraction
    rational: Fraction | None = None

    @classmethod
    def from_rational(cls, r: Scalar) -> AlgebraicNumber:
        r = to_rational(r)
        return cls(Polynomial([-r, 1]).primitive(), r - 1, r + 1, r)

    @classmethod
    def from_interval(cls, p: Polynomial, lo: Scalar, hi: Scalar) -> AlgebraicNumber:
        """Validate and canonicalize a user-supplied (poly, lo, hi) triple."""
        lo, hi = to_rational(lo), to_rational(hi)
        if p.is_zero() or p.degree < 1:
            raise ValueError("defining polynomial must be non-constant")
        if not lo < hi:
            raise ValueError("isolating interval needs lo < hi")
        sqf = p.squarefree()
        if sturm_root_count(sqf, (lo, hi)) != 1:
            raise ValueError("interval does not isolate exactly one root")
        return _root_from_interval(sqf, lo, hi)

    @property
    def is_rational(self) -> bool:
        return self.rational is not None

    def __repr__(self) -> str:
        if self.rational is not None:
            return f"alg({self.rational})"
        return f"alg({self.defining} in ({self.lo}, {self.hi}))"

    __str__ = __repr__

    def __float__(self) -> float:
        if self.rational is not None:
            return float(self.rational)
        a = self.refine(Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def bisect(self) -> AlgebraicNumber:
        """Halve the isolating interval once."""
        if self.rational is not None:
            r = self.rational
            half = (self.hi - self.lo) / 4
            return AlgebraicNumber(self.defining, max(self.lo, r - half), min(self.hi, r + half), r)
        p = self.defining
        mid = (self.lo + self.hi) / 2
        v = p(mid)
        if v == 0:
            # cannot happen for irrational roots; kept for safety
            return AlgebraicNumber(p, self.lo, self.hi, mid)
        if sign(v) == sign(p(self.lo)):
            return AlgebraicNumber(p, mid, self.hi)
        return AlgebraicNumber(p, self.lo, mid)

    def refine(self, width: Scalar) -> AlgebraicNumber:
        width = to_rational(width)
        if width <= 0:
            raise ValueError("width must be positive")
        a = self
        if a.rational is not None:
            r = a.rational
            half = min(width / 2, r - a.lo, a.hi - r)
            return AlgebraicNumber(a.defining, r - half, r + half, r)
        while a.hi - a.lo > width:
            a = a.bisect()
        return a

    def __neg__(self) -> AlgebraicNumber:
        p = self.defining.compose(Polynomial([0, -1])).primitive()
        r = None if self.rational is None else -self.rational
        return AlgebraicNumber(p, -self.hi, -self.lo, r)

    def _cmp(self, other: AlgebraicNumber | Scalar) -> int:
        return compare(self, as_algebraic(other))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (AlgebraicNumber, int, Fraction)) and not isinstance(other, bool):
            return self._cmp(other) == 0
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __lt__(self, other: AlgebraicNumber | Scalar) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: AlgebraicNumber | Scalar) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: AlgebraicNumber | Scalar) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: AlgebraicNumber | Scalar) -> bool:
        return self._cmp(other) >= 0


Point = Union[Fraction, AlgebraicNumber]


def as_algebraic(x: AlgebraicNumber | Scalar) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    return AlgebraicNumber.from_rational(x)


def simplify_point(x: AlgebraicNumber | Scalar) -> Point:
    """Rational points as Fraction, irrational ones as AlgebraicNumber."""
    if isinstance(x, AlgebraicNumber):
        return x.rational if x.rational is not None else x
    return to_rational(x)


def sign_at(p: Polynomial, a: AlgebraicNumber | Scalar) -> int:
    """Exact sign of ``p`` at the real number ``a``."""
    if not isinstance(a, AlgebraicNumber):
        return sign(p(to_rational(a)))
    if a.rational is not None:
        return sign(p(a.rational))
    if p.is_zero():
        return 0
    if p.is_constant():
        return sign(p.lc)
    g = gcd(a.defining, p)
    if g.degree >= 1 and sturm_root_count(g, (a.lo, a.hi)) >= 1:
        return 0
    while True:
        lo, hi = a.lo, a.hi
        vlo, vhi = p(lo), p(hi)
        if vlo != 0 and vhi != 0 and sturm_root_count(p, (lo, hi)) == 0:
            return sign(vlo)
        a = a.bisect()


def compare(a: AlgebraicNumber | Scalar, b: AlgebraicNumber | Scalar) -> int:
    """-1, 0 or +1 as ``a`` is less than, equal to or greater than ``b``."""
    if not isinstance(a, AlgebraicNumber) or a.rational is not None:
        ra = a.rational if isinstance(a, AlgebraicNumber) else to_rational(a)
        if not isinstance(b, AlgebraicNumber) or b.rational is not None:
            rb = b.rational if isinstance(b, AlgebraicNumber) else to_rational(b)
            return sign(ra - rb)
        return -_compare_irrational_rational(b, ra)
    if not isinstance(b, AlgebraicNumber) or b.rational is not None:
        rb = b.rational if isinstance(b, AlgebraicNumber) else to_rational(b)
        return _compare_irrational_rational(a, rb)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    g = gcd(a.defining, b.defining)
    if g.degree >= 1:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if lo < hi and sturm_root_count(g, (lo, hi)) >= 1:
            return 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        a, b = a.bisect(), b.bisect()


def _compare_irrational_rational(a: AlgebraicNumber, r: Fraction) -> int:
    while a.lo < r < a.hi:
        a = a.bisect()
    return 1 if r <= a.lo else -1


def rational_between(x: Point, y: Point) -> Fraction:
    """A rational strictly between ``x < y`` (the midpoint when both are rational)."""
    xa, ya = as_algebraic(x), as_algebraic(y)
    if compare(xa, ya) >= 0:
        raise ValueError("rational_between needs x < y")
    if xa.rational is not None and ya.rational is not None:
        return (xa.rational + ya.rational) / 2
    while True:
        lo = xa.rational if xa.rational is not None else xa.hi
        hi = ya.rational if ya.rational is not None else ya.lo
        if lo < hi:
            return (lo + hi) / 2
        if xa.rational is None:
            xa = xa.bisect()
        if ya.rational is None:
            ya = ya.bisect()


def _charpoly(m: list[list[Fraction]]) -> Polynomial:
    """Characteristic polynomial det(tI - m), Faddeev-LeVerrier."""
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        prod = [[sum(m[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        mk = [[prod[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = [[sum(m[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return Polynomial(coeffs)


def _companion_image(q: Polynomial, p: Polynomial) -> list[list[Fraction]]:
    """The matrix q(C) for the companion matrix C of monic(p)."""
    pm = p.monic()
    n = pm.degree
    comp = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        comp[i][i - 1] = Fraction(1)
    for i in range(n):
        comp[i][n - 1] = -pm.coeffs[i]
    acc = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(q.coeffs):
        acc = [[sum(acc[i][l] * comp[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            acc[i][i] += c
    return acc


def evaluate(q: Polynomial, a: AlgebraicNumber | Scalar) -> Point:
    """The exact value ``q(a)``: a Fraction, or an AlgebraicNumber when irrational."""
    if not isinstance(a, AlgebraicNumber):
        return q(to_rational(a))
    if a.rational is not None:
        return q(a.rational)
    q = q % a.defining
    if q.is_constant():
        return q(0)
    if sign_at(q, a) == 0:
        return Fraction(0)
    r = _charpoly(_companion_image(q, a.defining)).squarefree()
    while True:
        vlo, vhi = _interval_eval(q, a.lo, a.hi)
        pad = vhi - vlo
        lo, hi = vlo - pad, vhi + pad
        if lo < hi and r(lo) != 0 and r(hi) != 0 and sturm_root_count(r, (lo, hi)) == 1:
            return simplify_point(_root_from_interval(r, lo, hi))
        a = a.bisect()
