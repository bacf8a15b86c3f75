"""Frobenius-compatible and special primes over F_p[x_1..x_n]."""

from ._core import (
    ContextError,
    MathError,
    ParseError,
    PolyMatrix,
    Poly,
    ResourceError,
    Ring,
    Submodule,
    compatible_primes,
    corank_positive_primes,
    fedder_colon,
    frobenius_power,
    ie_operation,
    is_compatible,
    is_u_special,
    minimal_primes,
    run,
    set_thread_count,
    special_primes,
    stable_kernel,
    star_closure,
    thread_count,
)

__all__ = [
    "ContextError",
    "MathError",
    "ParseError",
    "PolyMatrix",
    "Poly",
    "ResourceError",
    "Ring",
    "Submodule",
    "compatible_primes",
    "corank_positive_primes",
    "fedder_colon",
    "frobenius_power",
    "ie_operation",
    "is_compatible",
    "is_u_special",
    "minimal_primes",
    "run",
    "set_thread_count",
    "special_primes",
    "stable_kernel",
    "star_closure",
    "thread_count",
]
