"""Acceptance criteria 1-9.

Counts and tolerances are pinned as module constants; a per-criterion
PASS/FAIL line is printed in the terminal summary (see conftest.py).
"""

from __future__ import annotations

import io
import json
import random
import zlib
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

from rsl import atomic, cli
from rsl.exactnum import AlgebraicNumber, Polynomial
from rsl.piecewise import (
    Domain,
    PiecewisePoly,
    Side,
    dominated,
    gauge_norm,
    is_nonnegative,
    pw_abs,
    pw_eval,
    pw_inf,
    pw_leq,
)
from rsl.randgen import (
    grid_points,
    random_disjoint_pair,
    random_nonzero_nonneg,
    random_pw,
    resolve_seed,
)
from rsl.serialize import deserialize, serialize
from rsl.spectrum import (
    UNBOUNDED,
    Kind,
    PrimeDescriptor,
    chain_above,
    lex_abs,
    max_chain_length,
    member,
    nonprincipal_witness,
    order_dense_witness,
    phi_hom,
    principal_membership,
    psi_hom,
    synthesize_generator,
    verify_chain,
)

from .corpus import serialization_corpus

D = Domain(Fraction(0), Fraction(1))
GOLDEN = Path(__file__).parent / "golden"

RIESZ_FUNCTIONS = 500
RIESZ_POINTS_PER_FUNCTION = 5
RIESZ_MAX_DEGREE = 4
RIESZ_MAX_PIECES = 4
PRIMALITY_PAIRS = 500
PRIMALITY_POINTS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))
CHAIN_CAPS = (1, 2, 3, 4)
CHAIN_WITNESS_LENGTH = 7
GENERATOR_POINTS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1))
GENERATOR_LEVELS = (1, 2, 3)
GENERATOR_SAMPLES = 200
NONPRINCIPAL_POINTS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
NONPRINCIPAL_SAMPLES = 100
ORDER_DENSE_SAMPLES = 200
GAUGE_TOL = Fraction(1, 1000)
GAUGE_ORACLE_POINTS = 10**4
ATOMIC_DIMS = range(1, 7)
SERIALIZATION_CORPUS_SIZE = 50


def _rng(salt: int) -> random.Random:
    return random.Random(resolve_seed() * 1000 + salt)


def _descriptors(t0: Fraction, levels=GENERATOR_LEVELS, d: Domain = D) -> list[PrimeDescriptor]:
    out = [PrimeDescriptor.maximal(t0, d)]
    if d.admissible(t0, Side.LEFT):
        out += [PrimeDescriptor.left(t0, k, d) for k in levels] + [PrimeDescriptor.left_min(t0, d)]
    if d.admissible(t0, Side.RIGHT):
        out += [PrimeDescriptor.right(t0, k, d) for k in levels] + [PrimeDescriptor.right_min(t0, d)]
    return out


# ---------------------------------------------------------------- 1


@pytest.mark.criterion(1)
def test_riesz_homomorphisms() -> None:
    rng = _rng(1)
    candidates = [D.a, *grid_points(D), D.b]
    failures = []
    for i in range(RIESZ_FUNCTIONS):
        anchors = rng.sample(grid_points(D), 2)
        f = random_pw(rng, D, RIESZ_MAX_DEGREE, RIESZ_MAX_PIECES, anchors=anchors)
        assert f.max_degree <= RIESZ_MAX_DEGREE and len(f.pieces) <= RIESZ_MAX_PIECES
        af = pw_abs(f)
        # bias toward breakpoints and anchors, where both sides differ
        points = [*f.breakpoints, *anchors, *candidates]
        choices = {(t0, s) for t0 in points for s in Side if D.admissible(t0, s)}
        picked = rng.sample(sorted(choices, key=lambda c: (c[0], c[1].value)), RIESZ_POINTS_PER_FUNCTION)
        for t0, side in picked:
            if lex_abs(phi_hom(f, t0, side, RIESZ_MAX_DEGREE)) != phi_hom(af, t0, side, RIESZ_MAX_DEGREE):
                failures.append(("phi", i, t0, side))
            if lex_abs(psi_hom(f, t0, side)) != psi_hom(af, t0, side):
                failures.append(("psi", i, t0, side))
    assert failures == []


# ---------------------------------------------------------------- 2


@pytest.mark.criterion(2)
def test_prime_disjunction() -> None:
    rng = _rng(2)
    primes = [P for t0 in PRIMALITY_POINTS for P in _descriptors(t0)]
    assert {P.kind for P in primes} == set(Kind)
    failures = []
    for i in range(PRIMALITY_PAIRS):
        f, g = random_disjoint_pair(rng, D, anchors=PRIMALITY_POINTS)
        assert pw_inf(pw_abs(f), pw_abs(g)).is_zero()
        for P in primes:
            if not (member(f, P) or member(g, P)):
                failures.append((i, P.label()))
    assert failures == []


# ---------------------------------------------------------------- 3


@pytest.mark.criterion(3)
def test_chain_above_left_min_in_ppol2() -> None:
    d = Domain(Fraction(0), Fraction(1), cap=2)
    half = Fraction(1, 2)
    chain = chain_above(PrimeDescriptor.left_min(half, d))
    expected = [PrimeDescriptor.left(half, 2, d), PrimeDescriptor.left(half, 1, d), PrimeDescriptor.maximal(half, d)]
    assert list(chain) == expected
    assert chain.primes[0].kind is Kind.LEFT_MIN
    assert not chain.truncated
    assert verify_chain(chain)


@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", CHAIN_CAPS)
def test_max_chain_length_capped(n: int) -> None:
    result = max_chain_length(Domain(Fraction(0), Fraction(1), cap=n))
    assert result.length == n
    assert result.witness.length == n
    assert verify_chain(result.witness)


@pytest.mark.criterion(3)
def test_max_chain_length_unbounded() -> None:
    result = max_chain_length(D, CHAIN_WITNESS_LENGTH)
    assert result.length == UNBOUNDED
    assert result.witness.length == CHAIN_WITNESS_LENGTH
    assert verify_chain(result.witness)


# ---------------------------------------------------------------- 4


def paper_generator(P: PrimeDescriptor) -> PiecewisePoly:
    """The generators written out by hand: |t - t0| glued with |t - t0|^(k+1) on the prime's side."""
    d, t0 = P.domain, P.t0
    left = Polynomial([t0, -1])
    right = Polynomial([-t0, 1])
    lpow = P.k + 1 if P.kind is Kind.LEFT_K else 1
    rpow = P.k + 1 if P.kind is Kind.RIGHT_K else 1
    if t0 == d.a:
        return PiecewisePoly.poly(right**rpow, d)
    if t0 == d.b:
        return PiecewisePoly.poly(left**lpow, d)
    return PiecewisePoly(d, [t0], [left**lpow, right**rpow])


def _generator_cases() -> list[PrimeDescriptor]:
    return [P for t0 in GENERATOR_POINTS for P in _descriptors(t0) if not P.kind.minimal]


@pytest.mark.criterion(4)
@pytest.mark.parametrize("P", _generator_cases(), ids=lambda P: P.label())
def test_generator(P: PrimeDescriptor) -> None:
    g = synthesize_generator(P)
    assert is_nonnegative(g) and member(g, P)
    hand = paper_generator(P)
    assert principal_membership(g, hand) and principal_membership(hand, g)
    rng = _rng(400 + zlib.crc32(P.label().encode()) % 1000)
    hits = 0
    for _ in range(GENERATOR_SAMPLES):
        u = random_pw(rng, D, anchors=[P.t0])
        inside = member(u, P)
        hits += inside
        assert inside == principal_membership(u, g), u
    # the sampler must exercise both outcomes
    assert 0 < hits < GENERATOR_SAMPLES


# ---------------------------------------------------------------- 5


def _minimal_member(rng: random.Random, P: PrimeDescriptor) -> PiecewisePoly:
    """Random g that vanishes on a one-sided neighbourhood of t0 on P's side."""
    h = random_pw(rng, D, anchors=[P.t0])
    t0 = P.t0
    if P.side is Side.LEFT:
        s = t0 - (t0 - D.a) * Fraction(rng.randint(1, 7), 8)
        cut = PiecewisePoly(D, [s, t0], [Polynomial([s, -1]), Polynomial(), Polynomial([-t0, 1])])
    else:
        s = t0 + (D.b - t0) * Fraction(rng.randint(1, 7), 8)
        cut = PiecewisePoly(D, [t0, s], [Polynomial([t0, -1]), Polynomial(), Polynomial([-s, 1])])
    return h * cut


@pytest.mark.criterion(5)
@pytest.mark.parametrize("t0", NONPRINCIPAL_POINTS, ids=str)
@pytest.mark.parametrize("side", list(Side), ids=lambda s: s.value)
def test_nonprincipal_witness(t0: Fraction, side: Side) -> None:
    P = PrimeDescriptor.left_min(t0, D) if side is Side.LEFT else PrimeDescriptor.right_min(t0, D)
    rng = _rng(500 + int(t0 * 4) * 2 + (side is Side.RIGHT))
    for _ in range(NONPRINCIPAL_SAMPLES):
        g = _minimal_member(rng, P)
        assert member(g, P)
        h = nonprincipal_witness(P, g)
        assert member(h, P)
        assert is_nonnegative(h) and not h.is_zero()
        assert not principal_membership(h, g)


# ---------------------------------------------------------------- 6


@pytest.mark.criterion(6)
@pytest.mark.parametrize("kind", list(Kind), ids=lambda k: k.value)
def test_order_dense_witness(kind: Kind) -> None:
    rng = _rng(600 + list(Kind).index(kind))
    pool = [D.a, *grid_points(D), D.b]
    for _ in range(ORDER_DENSE_SAMPLES):
        f = random_nonzero_nonneg(rng, D, anchors=rng.sample(grid_points(D), 2))
        side = kind.side
        t0 = rng.choice([x for x in pool if side is None or D.admissible(x, side)])
        k = rng.randint(1, 3) if kind in (Kind.LEFT_K, Kind.RIGHT_K) else None
        P = PrimeDescriptor(kind, t0, k, D)
        g = order_dense_witness(P, f)
        assert is_nonnegative(g) and not g.is_zero()
        assert pw_leq(g, f)
        assert member(g, P)


# ---------------------------------------------------------------- 7


@pytest.mark.criterion(7)
def test_gauge_norm() -> None:
    half = Fraction(1, 2)
    g = PiecewisePoly.poly(Polynomial([-half, 1]) ** 2, D)
    f = pw_abs(PiecewisePoly.poly(Polynomial([-half, 1]), D))
    lo, hi = gauge_norm(g, f, GAUGE_TOL)
    assert lo <= half <= hi
    assert hi - lo <= GAUGE_TOL
    assert dominated(g, f, hi)
    assert lo == 0 or not dominated(g, f, lo)
    # brute-force oracle: largest |g|/f over a rational grid
    ratios = []
    for i in range(GAUGE_ORACLE_POINTS + 1):
        x = Fraction(i, GAUGE_ORACLE_POINTS)
        fx = pw_eval(f, x)
        if fx:
            ratios.append(abs(pw_eval(g, x)) / fx)
    sampled = max(ratios)
    assert lo <= sampled <= hi


# ---------------------------------------------------------------- 8


def _brute_force_prime(I: atomic.CoordIdeal) -> bool:
    """Prime disjunction over all pairs of disjoint 0/1 vectors."""
    m = I.dim
    for mask_x in range(2**m):
        for mask_y in range(2**m):
            if mask_x & mask_y:
                continue
            x = atomic.FinVec(tuple(mask_x >> i & 1 for i in range(m)))
            y = atomic.FinVec(tuple(mask_y >> i & 1 for i in range(m)))
            if x not in I and y not in I:
                return False
    return True


@pytest.mark.criterion(8)
@pytest.mark.parametrize("m", ATOMIC_DIMS)
def test_atomic_model(m: int) -> None:
    ideals = atomic.enumerate_ideals(m)
    assert len(ideals) == 2**m
    proper = [I for I in ideals if I.proper]
    primes = [I for I in proper if atomic.classify_ideal(I).prime]
    assert len(primes) == m
    assert primes == [I for I in proper if _brute_force_prime(I)]
    for P in primes:
        c = atomic.classify_ideal(P)
        assert c.kind is atomic.IdealKind.MAXIMAL and c.minimal_prime
        assert not any(P < J for J in proper)
        assert not any(Q < P for Q in primes)
    for I in proper:
        c = atomic.classify_ideal(I)
        if not c.prime:
            assert c.witness is not None
            assert atomic.disjoint_pair_holds(I, *c.witness)


# ---------------------------------------------------------------- 9


GOLDEN_RUNS = {
    "spectrum_abs.json": ["spectrum", "--domain", "0", "1", "--expr", "abs(t-1/2)"],
    "generator_R_half_1.json": ["generator", "--domain", "0", "1", "--prime", "R:1/2:1"],
    "chain_Lmin_half_cap2.json": ["chain", "--mode", "ppoln", "--cap", "2", "--prime", "Lmin:1/2"],
}


def run_cli(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


@pytest.mark.criterion(9)
@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_cli_golden(name: str) -> None:
    code, out = run_cli([*GOLDEN_RUNS[name], "--json"])
    assert code == 0
    assert out.encode() == (GOLDEN / name).read_bytes()


@pytest.mark.criterion(9)
def test_golden_contents() -> None:
    spectrum = json.loads((GOLDEN / "spectrum_abs.json").read_text())
    assert spectrum == {"descriptors": [{"kind": "M", "t0": "1/2", "k": None}], "families": []}
    chain = json.loads((GOLDEN / "chain_Lmin_half_cap2.json").read_text())
    assert [p["kind"] for p in chain["chain"]] == ["Lmin", "L", "M"]
    gen = json.loads((GOLDEN / "generator_R_half_1.json").read_text())["generator"]
    assert gen["breakpoints"] == ["1/2"]
    assert gen["pieces"] == [["1/2", "-1"], ["1/4", "-1", "1"]]


@pytest.mark.criterion(9)
def test_serialization_round_trip() -> None:
    corpus = serialization_corpus()
    assert len(corpus) >= SERIALIZATION_CORPUS_SIZE
    for kind, value, domain in corpus:
        text = serialize(value)
        back = deserialize(text, kind, domain)
        assert _same(back, value), (kind, text)
        assert serialize(back) == text


def _same(x: object, y: object) -> bool:
    if isinstance(x, AlgebraicNumber) and isinstance(y, AlgebraicNumber):
        return x.defining == y.defining and x.lo == y.lo and x.hi == y.hi
    return x == y
