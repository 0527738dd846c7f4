"""QMC integration error of g(x) = exp(-sum_j u_j x_j) over digital nets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import constant_A
from .merit import compensated_mean, wafom_dual_sum
from .net import DEFAULT_DUAL_BUDGET, NetParams, PointSet, dual_net_digits, reverse_bits
from .walsh import as_weights, walsh_coeff_exp_1d

# digits past this offset contribute below 2^-60 relative to the tail product
_TAIL_DIGITS = 64


def exact_integral_exp(u: Sequence[float]) -> float:
    return constant_A(as_weights(u))


def qmc_mean_exp(points: PointSet, u: Sequence[float]) -> float:
    u = as_weights(u, points.s)
    exponent = points.as_float() @ np.asarray(u, dtype=np.float64)
    return compensated_mean(np.exp(-exponent))


def err_exp(points: PointSet, u: Sequence[float]) -> float:
    """I_P(g) - I(g); positive for every digital net."""
    u = as_weights(u, points.s)
    exponent = points.as_float() @ np.asarray(u, dtype=np.float64)
    return compensated_mean(np.exp(-exponent), exact_integral_exp(u))


def normalized_err_exp(points: PointSet, u: Sequence[float]) -> float:
    """Error of g / ||g||, where the norm equals the exact integral."""
    return err_exp(points, u) / constant_A(as_weights(u, points.s))


def truncation_tail_factor(u: Sequence[float], n: int) -> float:
    """prod_j prod_{i>n} (1 + u_j 2^-(i+1)) - 1, the relative mass of digits past n."""
    logs = [math.log1p(math.ldexp(uj, -(i + 1)))
            for uj in u for i in range(n + 1, n + 1 + _TAIL_DIGITS)]
    return math.expm1(math.fsum(logs))


@dataclass(frozen=True)
class DualErrSum:
    """Truncated dual-net Walsh sum and a bound on the dropped terms."""

    value: float
    tail_bound: float
    terms: int
    wafom_truncated: float


def err_via_dual(params: NetParams, u: Sequence[float],
                 budget_log2: int = DEFAULT_DUAL_BUDGET) -> DualErrSum:
    """Sum of Walsh coefficients of g over the nonzero truncated dual net.

    Indices with digits beyond n are also in the dual net (those digits are
    unconstrained).  Each coefficient is at most A 2^-mu, and summing 2^-mu
    over the untruncated dual gives (W^n + 1)(T + 1) - 1 with T the tail
    factor, so the dropped coefficients total at most A (W^n + 1) T.
    """
    u = as_weights(u, params.s)
    digits = dual_net_digits(params, budget_log2)[1:]
    ks = reverse_bits(digits, params.n)
    coeffs = np.ones(ks.shape[0], dtype=np.float64)
    for j, uj in enumerate(u):
        # the coefficient factorizes; evaluate each distinct k_j once
        uniq, inverse = np.unique(ks[:, j], return_inverse=True)
        table = np.array([walsh_coeff_exp_1d(-uj, int(k)) for k in uniq.tolist()])
        coeffs *= table[inverse.reshape(-1)]
    value = math.fsum(coeffs.tolist())

    w = wafom_dual_sum(params, u, budget_log2)
    tail = constant_A(u) * (w + 1.0) * truncation_tail_factor(u, params.n)
    return DualErrSum(value, tail, int(ks.shape[0]), w)
