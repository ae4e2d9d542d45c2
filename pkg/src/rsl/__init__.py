"""Exact prime spectra of piecewise-polynomial vector lattices."""

from .errors import ParseError, RslError
from .exactnum import AlgebraicNumber, Polynomial, compare, evaluate, isolate_roots, sign_at, sturm_root_count
from .expr import parse_expr, parse_to_pw, pretty
from .piecewise import (
    Domain,
    PiecewisePoly,
    Side,
    gauge_norm,
    one_sided_jet,
    pw_abs,
    pw_eval,
    pw_inf,
    pw_neg,
    pw_pos,
    pw_sup,
    vanishing_order,
    zero_set,
)
from .serialize import deserialize, serialize
from .spectrum import (
    UNBOUNDED,
    Kind,
    LexVector,
    PrimeDescriptor,
    chain_above,
    max_chain_length,
    member,
    nonprincipal_witness,
    order_dense_witness,
    phi_hom,
    primes_containing,
    psi_hom,
    quotient_image,
    synthesize_generator,
)

__all__ = [
    "AlgebraicNumber",
    "Domain",
    "Kind",
    "LexVector",
    "ParseError",
    "PiecewisePoly",
    "Polynomial",
    "PrimeDescriptor",
    "RslError",
    "Side",
    "UNBOUNDED",
    "chain_above",
    "compare",
    "deserialize",
    "evaluate",
    "gauge_norm",
    "isolate_roots",
    "max_chain_length",
    "member",
    "nonprincipal_witness",
    "one_sided_jet",
    "order_dense_witness",
    "parse_expr",
    "parse_to_pw",
    "phi_hom",
    "pretty",
    "primes_containing",
    "psi_hom",
    "pw_abs",
    "pw_eval",
    "pw_inf",
    "pw_neg",
    "pw_pos",
    "pw_sup",
    "quotient_image",
    "serialize",
    "sign_at",
    "sturm_root_count",
    "synthesize_generator",
    "vanishing_order",
    "zero_set",
]
