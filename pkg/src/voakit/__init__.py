"""Exact computations for vertex operator algebras, cosets, characters and simple currents."""

from .engine import State, VoaContext, derivative, nth_product, normal_order, verify_axioms
from .exactmath import K, Scalar, parse_scalar
from .expr import canonicalize, format_state, parse_state
from .kernels import BACKEND
from .presets import build, named_state, parse_preset

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "K",
    "Scalar",
    "State",
    "VoaContext",
    "build",
    "canonicalize",
    "derivative",
    "format_state",
    "named_state",
    "normal_order",
    "nth_product",
    "parse_preset",
    "parse_scalar",
    "parse_state",
    "verify_axioms",
]
