"""Sandwich constants relating the exponential-integrand error to WAFOM."""

from __future__ import annotations

import math
from typing import Sequence

from .errors import DomainError

DEFAULT_W_MAX = 64


def _check_weights(u: Sequence[float]) -> None:
    if len(u) == 0:
        raise DomainError("need at least one weight")
    for uj in u:
        if not uj > 0:
            raise DomainError(f"weights must be positive, got {uj!r}")


def _phi(x: float) -> float:
    """(1 - exp(-x)) / x, the mean of exp(-t) on [0, x]."""
    return -math.expm1(-x) / x


def constant_A_1d(u: float) -> float:
    _check_weights([u])
    return _phi(u)


def constant_B_1d(u: float, w_max: int = DEFAULT_W_MAX) -> float:
    """min over w = 1..w_max of phi(2^-w u) * prod_{i<=w} phi(2^-i u)."""
    _check_weights([u])
    if w_max < 1:
        raise DomainError("w_max must be >= 1")
    best = math.inf
    prod = 1.0
    for w in range(1, w_max + 1):
        x = math.ldexp(u, -w)
        f = _phi(x)
        prod *= f
        best = min(best, f * prod)
    return best


def constant_A(u: Sequence[float]) -> float:
    _check_weights(u)
    return math.prod(_phi(uj) for uj in u)


def constant_B(u: Sequence[float], w_max: int = DEFAULT_W_MAX) -> float:
    _check_weights(u)
    return math.prod(constant_B_1d(uj, w_max) for uj in u)
