"""Seeded random piecewise polynomials for the property suites.

Samples are sums of a global polynomial and one-sided truncated powers
``(t - b)_+^m r(t)`` / ``(b - t)_+^m r(t)`` anchored at grid points, so they
frequently vanish to high order, or identically, beside the anchors.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from typing import Sequence

from .exactnum import Polynomial
from .piecewise import Domain, PiecewisePoly, pw_abs, pw_hat, pw_neg, pw_pos

DEFAULT_SEED = 20240611


def resolve_seed(seed: int | None = None) -> int:
    """``RSL_SEED`` wins over an explicit seed, which wins over the default."""
    env = os.environ.get("RSL_SEED")
    if env:
        return int(env)
    return DEFAULT_SEED if seed is None else seed


def random_rational(rng: random.Random, bound: int = 3, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den))


def random_poly(rng: random.Random, degree: int, bound: int = 3) -> Polynomial:
    if degree < 0:
        return Polynomial()
    coeffs = [random_rational(rng, bound) for _ in range(degree + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(rng.choice((-1, 1)))
    return Polynomial(coeffs)


def grid_points(d: Domain, n: int = 8) -> list[Fraction]:
    return [d.a + (d.b - d.a) * Fraction(i, n) for i in range(1, n)]


def random_pw(
    rng: random.Random,
    d: Domain,
    max_degree: int = 4,
    max_pieces: int = 4,
    anchors: Sequence[Fraction] = (),
) -> PiecewisePoly:
    if d.cap is not None:
        max_degree = min(max_degree, d.cap)
    pool = sorted(set(grid_points(d)) | {x for x in anchors if d.a < x < d.b})
    preferred = [x for x in anchors if d.a < x < d.b]
    count = rng.randint(0, max_pieces - 1)
    bps: set[Fraction] = set()
    while len(bps) < min(count, len(pool)):
        bps.add(rng.choice(preferred) if preferred and rng.random() < 0.5 else rng.choice(pool))
    t = Polynomial.identity()
    free = Domain(d.a, d.b)
    f = PiecewisePoly.zero(free)
    mode = rng.random()
    if mode < 0.6:
        deg = rng.randint(0, max_degree)
        g = random_poly(rng, deg)
        if anchors and rng.random() < 0.6:
            c = rng.choice(list(anchors))
            m = rng.randint(1, max_degree)
            g = Polynomial.linear(1, c) ** m * random_poly(rng, rng.randint(0, max_degree - m))
        f = f + PiecewisePoly.poly(g, free)
    for b in sorted(bps):
        m = rng.randint(1, max_degree)
        r = random_poly(rng, rng.randint(0, max_degree - m))
        if rng.random() < 0.5:
            pieces = [Polynomial(), (t - b) ** m * r]
        else:
            pieces = [(b - t) ** m * r, Polynomial()]
        f = f + PiecewisePoly(free, [b], pieces, check=False)
    return PiecewisePoly(d, f.breakpoints, f.pieces)


def random_nonzero_nonneg(rng: random.Random, d: Domain, **kw: object) -> PiecewisePoly:
    while True:
        f = random_pw(rng, d, **kw)
        g = pw_abs(f) if rng.random() < 0.5 else pw_pos(f)
        if not g.is_zero():
            return g


def random_hat(rng: random.Random, d: Domain, lo: Fraction, hi: Fraction) -> PiecewisePoly:
    """A tent with random rational support inside [lo, hi]."""
    width = hi - lo
    u = lo + width * Fraction(rng.randint(0, 3), 8)
    v = hi - width * Fraction(rng.randint(0, 3), 8)
    return pw_hat(d, u, v, Fraction(rng.randint(1, 8), rng.randint(1, 4)))


def random_disjoint_pair(
    rng: random.Random, d: Domain, anchors: Sequence[Fraction] = (), **kw: object
) -> tuple[PiecewisePoly, PiecewisePoly]:
    """Positive/negative parts of a random function, or tents with separated supports."""
    kind = rng.random()
    if kind < 0.7:
        h = random_pw(rng, d, anchors=anchors, **kw)
        f, g = pw_pos(h), pw_neg(h)
    else:
        pts = sorted(set(grid_points(d)) | {x for x in anchors if d.a <= x <= d.b} | {d.a, d.b})
        i, j = sorted(rng.sample(range(len(pts)), 2))
        cut = pts[rng.randint(i, j)]
        f = random_hat(rng, d, d.a, cut) if cut > d.a else PiecewisePoly.zero(d)
        g = random_hat(rng, d, cut, d.b) if cut < d.b else PiecewisePoly.zero(d)
    if rng.random() < 0.5:
        f, g = g, f
    scale = Fraction(rng.randint(1, 5), rng.randint(1, 3))
    return f.scale(scale), g
