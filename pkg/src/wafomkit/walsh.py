"""Walsh functions, the digit weight mu_u and Walsh coefficients of exponentials."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .constants import constant_A_1d, constant_B_1d, DEFAULT_W_MAX
from .errors import BudgetError, DimensionError, DomainError

NUMERIC_MAX_LOG2 = 20


def as_weights(u: Sequence[float] | float, s: int | None = None) -> tuple[float, ...]:
    """Validate a weight vector; a scalar is broadcast to length ``s``."""
    if isinstance(u, (int, float)):
        if s is None:
            raise DimensionError("scalar weight needs a dimension")
        u = [float(u)] * s
    u = tuple(float(v) for v in u)
    if not u:
        raise DomainError("need at least one weight")
    if s is not None and len(u) != s:
        raise DimensionError(f"expected {s} weights, got {len(u)}")
    for v in u:
        if not (v > 0 and math.isfinite(v)):
            raise DomainError(f"weights must be positive and finite, got {v!r}")
    return u


def _digits(k: int) -> list[int]:
    """kappa_1, kappa_2, ... (least significant bit of k first)."""
    return [(k >> b) & 1 for b in range(k.bit_length())]


def walsh_function(k: Sequence[int], y: Sequence[int], n: int) -> int:
    """wal_k at the point whose coordinates are the n-digit integers ``y``.

    Digits of k beyond position n meet zero digits of the point and drop out.
    """
    if len(k) != len(y):
        raise DimensionError("index and point dimensions differ")
    parity = 0
    for kj, yj in zip(k, y):
        for i, kappa in enumerate(_digits(int(kj)), start=1):
            if kappa and i <= n:
                parity ^= (int(yj) >> (n - i)) & 1
    return -1 if parity else 1


def mu_weight(k: Sequence[int], u: Sequence[float]) -> float:
    if len(k) != len(u):
        raise DimensionError("index and weight dimensions differ")
    total = 0.0
    for kj, uj in zip(k, u):
        lg = math.log2(uj)
        for i, kappa in enumerate(_digits(int(kj)), start=1):
            if kappa:
                total += i + 1 - lg
    return total


def mu_decay(k: Sequence[int], u: Sequence[float]) -> float:
    """2^-mu_u(k) evaluated as a product of u_j 2^-(i+1) over set digits."""
    if len(k) != len(u):
        raise DimensionError("index and weight dimensions differ")
    out = 1.0
    for kj, uj in zip(k, u):
        for i, kappa in enumerate(_digits(int(kj)), start=1):
            if kappa:
                out *= math.ldexp(uj, -(i + 1))
    return out


def walsh_coeff_exp_1d(a: float, k: int) -> float:
    """k-th Walsh coefficient of x -> exp(a x) on [0, 1), in closed form."""
    if a == 0:
        raise DomainError("a must be nonzero; the constant function has coefficient 1 at k=0")
    if k < 0:
        raise DomainError("k must be nonnegative")
    w = k.bit_length()
    value = math.expm1(math.ldexp(a, -w)) / a
    for i, kappa in enumerate(_digits(k), start=1):
        x = math.ldexp(a, -i)
        value *= -math.expm1(x) if kappa else 1.0 + math.exp(x)
    return value


def walsh_coeff_exp_multi(u: Sequence[float], k: Sequence[int]) -> float:
    """Walsh coefficient of exp(-sum_j u_j x_j); the integrand factorizes."""
    if len(k) != len(u):
        raise DimensionError("index and weight dimensions differ")
    return math.prod(walsh_coeff_exp_1d(-uj, int(kj)) for uj, kj in zip(u, k))


def walsh_coeff_numeric(a: float, k: int) -> float:
    """Integrate exp(a x) wal_k(x) exactly on each of the 2^w cells where wal_k is constant."""
    if a == 0:
        raise DomainError("a must be nonzero")
    if k < 0:
        raise DomainError("k must be nonnegative")
    w = k.bit_length()
    if w > NUMERIC_MAX_LOG2:
        raise BudgetError(f"k needs 2^{w} cells, budget is 2^{NUMERIC_MAX_LOG2}")
    cells = np.arange(1 << w, dtype=np.int64)
    # digit i of the cell's left end is bit (w - i) of l; kappa_i is bit (i - 1) of k
    parity = np.zeros(1 << w, dtype=np.int64)
    for i in range(1, w + 1):
        if (k >> (i - 1)) & 1:
            parity ^= (cells >> (w - i)) & 1
    sign = 1.0 - 2.0 * parity
    cell_integral = math.expm1(math.ldexp(a, -w)) / a
    terms = sign * np.exp(a * np.ldexp(cells.astype(np.float64), -w)) * cell_integral
    return math.fsum(terms.tolist())


def coeff_bounds_1d(u: float, k: int, w_max: int = DEFAULT_W_MAX) -> tuple[float, float]:
    """(B_u 2^-mu_u(k), A_u 2^-mu_u(k)) bracketing the k-th coefficient of exp(-u x)."""
    decay = mu_decay([k], [u])
    return constant_B_1d(u, w_max) * decay, constant_A_1d(u) * decay
