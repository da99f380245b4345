"""Exact knot-concordance invariants from Seifert matrices and knot expressions."""

from .knotexpr import (
    Cable,
    Mirror,
    Satellite,
    SeifertLeaf,
    Sum,
    Torus,
    Unknot,
    Whitehead,
    alexander_of,
    parse,
    seifert_of,
    signature_at,
    signature_step_function,
    tau_of,
)
from .seifert import SeifertMatrix, alexander_polynomial, signature_function
from .stepfn import StepFunction

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoised signature functions, Alexander polynomials and Smith forms."""
    from . import covers, seifert

    seifert._alexander.cache_clear()
    seifert._nullity.cache_clear()
    seifert._signature_function.cache_clear()
    covers._smith_cache.clear()

__all__ = [
    "Cable",
    "Mirror",
    "Satellite",
    "SeifertLeaf",
    "SeifertMatrix",
    "StepFunction",
    "Sum",
    "Torus",
    "Unknot",
    "Whitehead",
    "alexander_of",
    "clear_caches",
    "alexander_polynomial",
    "parse",
    "seifert_of",
    "signature_at",
    "signature_function",
    "signature_step_function",
    "tau_of",
]
