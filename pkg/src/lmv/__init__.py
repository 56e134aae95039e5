"""Exact Groebner-basis engine and chart-level semistability verifier for unitary local models."""

from .fields import QQ, FieldError, PrimeField, QuadraticField, Rationals, field_arith
from .groebner import GBTrace, ResourceExhausted
from .ideal import (
    Ideal,
    eliminate,
    ideal_equal,
    ideal_membership,
    intersect,
    krull_dimension,
    normal_form,
    radical_membership,
    reduced_groebner_basis,
    saturate,
)
from .orders import GREVLEX, LEX, MonomialOrder, block_order
from .parsing import ParseError, UnknownVariableError, parse_polynomial
from .polynomial import (
    ContextError,
    Polynomial,
    RingContext,
    differentiate,
    evaluate,
    make_ring_context,
    poly_arith,
    substitute,
    to_special_fiber,
)

__version__ = "0.1.0"
