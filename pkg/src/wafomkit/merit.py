"""Weighted WAFOM: dual-net sum, per-point product formula, lookup-table variant.

Per point the discretized merit multiplies, over coordinates j and digits
i <= n, the factor ``1 + r_ij`` for a zero digit and ``1 - r_ij`` for a one
digit, where ``r_ij = u_j 2^-(i+1)``.  The merit is the mean of those
products minus one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, ParameterError
from .net import DEFAULT_DUAL_BUDGET, MAX_DIGITS, NetParams, PointSet, dual_net_digits
from .walsh import as_weights

DEFAULT_DIGITS = 32
DEFAULT_CHUNK_BITS = 8
MAX_CHUNK_BITS = 16


def digit_scales(u: Sequence[float], n: int) -> np.ndarray:
    """(s, n) array of u_j 2^-(i+1); these are exact scalings of u_j."""
    i = np.arange(1, n + 1)
    return np.ldexp(np.asarray(u, dtype=np.float64)[:, None], -(i + 1)[None, :])


def _align_digits(coords: np.ndarray, have: int, want: int) -> np.ndarray:
    """Re-express n-digit integers with ``want`` digits (drop or zero-pad the tail)."""
    if want > MAX_DIGITS:
        raise DimensionError(f"at most {MAX_DIGITS} digits supported")
    if want >= have:
        return coords << np.uint64(want - have)
    return coords >> np.uint64(have - want)


def compensated_mean(values: np.ndarray, shift: float = 0.0) -> float:
    """Correctly rounded sum(values) / N - shift, with the shift folded into the sum."""
    N = values.size
    return math.fsum(values.tolist() + [-shift * N]) / N


def _digit_products(digits: np.ndarray, n: int, one: np.ndarray, zero: np.ndarray) -> np.ndarray:
    """Per-row product over j and i of ``one[j, i]`` or ``zero[j, i]`` by digit; increasing i."""
    per_coord = np.ones(digits.shape, dtype=np.float64)
    for i in range(1, n + 1):
        bit = ((digits >> np.uint64(n - i)) & np.uint64(1)).astype(bool)
        per_coord *= np.where(bit, one[:, i - 1], zero[:, i - 1])
    out = per_coord[:, 0].copy()
    for j in range(1, digits.shape[1]):
        out *= per_coord[:, j]
    return out


def wafom_pointwise(points: PointSet, u: Sequence[float], n: int = DEFAULT_DIGITS) -> float:
    """Discretized WAFOM by the per-point product formula; s*n multiplications per point."""
    u = as_weights(u, points.s)
    digits = _align_digits(points.coords, points.n, n)
    r = digit_scales(u, n)
    prods = _digit_products(digits, n, 1.0 - r, 1.0 + r)
    return compensated_mean(prods, 1.0)


def wafom_dual_sum(params: NetParams, u: Sequence[float],
                   budget_log2: int = DEFAULT_DUAL_BUDGET) -> float:
    """Sum of 2^-mu_u(k) over the nonzero truncated dual net, smallest terms first."""
    u = as_weights(u, params.s)
    digits = dual_net_digits(params, budget_log2)[1:]
    if digits.shape[0] == 0:
        return 0.0
    r = digit_scales(u, params.n)
    terms = _digit_products(digits, params.n, r, np.ones_like(r))
    return math.fsum(np.sort(terms).tolist())


@dataclass(frozen=True)
class LookupTables:
    """``tables[j][c][p]``: partial product over chunk c of coordinate j for digit pattern p."""

    u: tuple[float, ...]
    n: int
    chunk_bits: int
    tables: tuple[tuple[np.ndarray, ...], ...]

    @property
    def chunks(self) -> list[tuple[int, int]]:
        """(first digit, digit count) per chunk."""
        return [(start + 1, min(self.chunk_bits, self.n - start))
                for start in range(0, self.n, self.chunk_bits)]


def build_lookup_tables(u: Sequence[float], n: int = DEFAULT_DIGITS,
                        chunk_bits: int = DEFAULT_CHUNK_BITS) -> LookupTables:
    if not 1 <= chunk_bits <= MAX_CHUNK_BITS:
        raise ParameterError(f"chunk_bits must be in [1, {MAX_CHUNK_BITS}], got {chunk_bits}")
    u = as_weights(u)
    r = digit_scales(u, n)
    tables = []
    for j in range(len(u)):
        per_chunk = []
        for start in range(0, n, chunk_bits):
            width = min(chunk_bits, n - start)
            # pattern bit (width - 1 - t) is digit start + 1 + t; build in increasing digit order
            table = np.ones(1, dtype=np.float64)
            for t in range(width):
                rt = r[j, start + t]
                table = np.concatenate([table * (1.0 + rt), table * (1.0 - rt)]).reshape(2, -1).T.reshape(-1)
            per_chunk.append(table)
        tables.append(tuple(per_chunk))
    return LookupTables(u, n, chunk_bits, tuple(tables))


def wafom_lookup(points: PointSet, u: Sequence[float], n: int = DEFAULT_DIGITS,
                 chunk_bits: int = DEFAULT_CHUNK_BITS,
                 tables: LookupTables | None = None) -> float:
    """Discretized WAFOM with ceil(n / chunk_bits) table lookups per coordinate."""
    u = as_weights(u, points.s)
    if tables is None:
        tables = build_lookup_tables(u, n, chunk_bits)
    elif tables.u != u or tables.n != n or tables.chunk_bits != chunk_bits:
        raise ParameterError("lookup tables were built for different (u, n, chunk_bits)")
    digits = _align_digits(points.coords, points.n, n)
    prods = np.ones(points.size, dtype=np.float64)
    for j in range(points.s):
        col = digits[:, j]
        for (first, width), table in zip(tables.chunks, tables.tables[j]):
            last = first + width - 1
            pattern = (col >> np.uint64(n - last)) & np.uint64((1 << width) - 1)
            prods *= table[pattern.astype(np.intp)]
    return compensated_mean(prods, 1.0)


def multiplications_per_point(method: str, s: int, n: int = DEFAULT_DIGITS,
                              chunk_bits: int = DEFAULT_CHUNK_BITS) -> int:
    """Floating-point multiplications per point for the naive and lookup evaluators."""
    if method == "naive":
        return s * n
    if method == "lookup":
        return s * math.ceil(n / chunk_bits)
    raise ParameterError(f"unknown method {method!r}")
