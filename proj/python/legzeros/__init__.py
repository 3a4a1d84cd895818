"""Zeros of Gamma(1-z) P_n^z(tanh x) in the order z."""

from ._legzeros import (
    MAX_DEGREE,
    Error,
    charpoly,
    norm_constants,
    psi,
    psi_at_zero,
    trace,
    verify,
    zeros,
    zeros_anchored,
)

__all__ = [
    "MAX_DEGREE",
    "Error",
    "charpoly",
    "norm_constants",
    "psi",
    "psi_at_zero",
    "trace",
    "verify",
    "zeros",
    "zeros_anchored",
]
