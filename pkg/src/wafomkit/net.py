"""Digital nets over GF(2): point generation, dual nets and the net file format.

Digit convention used throughout the package: a coordinate with ``n``
digits is stored as an integer ``y`` in ``[0, 2**n)`` representing
``y / 2**n``; digit ``i`` (``i = 1`` most significant) is bit ``n - i``.
Dual-net indices are handled internally in the same "digit integer" form,
so the Walsh index ``k_j = sum_i kappa_i 2**(i-1)`` is the n-bit reversal
of its digit integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import BudgetError, DimensionError, NetFormatError
from .gf2 import BitMatrix, kernel_basis, random_matrix
from .rng import derive_seed

MultiIndex = tuple[int, ...]

MAX_DIGITS = 64
DEFAULT_DUAL_BUDGET = 24


@dataclass(frozen=True)
class NetParams:
    s: int
    n: int
    m: int
    matrices: tuple[BitMatrix, ...]

    def __post_init__(self) -> None:
        if self.s < 1:
            raise DimensionError("s must be >= 1")
        if not (self.n >= self.m >= 1):
            raise DimensionError(f"need n >= m >= 1, got n={self.n}, m={self.m}")
        if self.n > MAX_DIGITS:
            raise DimensionError(f"n > {MAX_DIGITS} digits is not supported")
        if len(self.matrices) != self.s:
            raise DimensionError(f"expected {self.s} matrices, got {len(self.matrices)}")
        for C in self.matrices:
            if (C.rows, C.cols) != (self.n, self.m):
                raise DimensionError(f"matrix is {C.rows}x{C.cols}, expected {self.n}x{self.m}")

    @property
    def size(self) -> int:
        return 1 << self.m

    def column_array(self) -> np.ndarray:
        """(s, m) uint64 array of packed columns."""
        return np.array([C.columns for C in self.matrices], dtype=np.uint64).reshape(self.s, self.m)

    def stacked_dual_matrix(self) -> BitMatrix:
        """The m x (n s) matrix [C_1^T | ... | C_s^T] whose kernel is the dual net."""
        cols: list[int] = []
        for C in self.matrices:
            cols.extend(C.row_ints())
        return BitMatrix(self.m, self.n * self.s, tuple(cols))


@dataclass(frozen=True)
class PointSet:
    """``coords[t, j]`` holds coordinate j of the point with index ``indices[t]``."""

    coords: np.ndarray
    n: int
    indices: np.ndarray
    params: NetParams | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    @property
    def s(self) -> int:
        return self.coords.shape[1]

    def as_float(self) -> np.ndarray:
        return self.coords.astype(np.float64) * 2.0 ** -self.n

    def multiset(self) -> list[tuple[int, ...]]:
        return sorted(map(tuple, self.coords.tolist()))


def random_net(s: int, n: int, m: int, seed: int) -> NetParams:
    """Net with independent uniform matrices; matrix j uses ``derive_seed(seed, j)``."""
    mats = tuple(random_matrix(n, m, derive_seed(seed, j)) for j in range(s))
    return NetParams(s, n, m, mats)


def identity_net(s: int, n: int) -> NetParams:
    return NetParams(s, n, n, (BitMatrix.identity(n),) * s)


def generate_points(params: NetParams) -> PointSet:
    """Points in index order h = 0 .. 2^m - 1; h_l = bit (l - 1) of h selects column l."""
    h = np.arange(params.size, dtype=np.uint64)
    cols = params.column_array()
    coords = np.zeros((params.size, params.s), dtype=np.uint64)
    for l in range(params.m):
        selected = ((h >> np.uint64(l)) & np.uint64(1)).astype(bool)
        coords[selected] ^= cols[:, l]
    return PointSet(coords, params.n, h, params)


def generate_points_graycode(params: NetParams) -> PointSet:
    """Points in Gray-code order: step t XORs column ctz(t) into the previous point."""
    N = params.size
    t = np.arange(1, N, dtype=np.uint64)
    lowbit = t & (~t + np.uint64(1))
    changed = np.log2(lowbit.astype(np.float64)).astype(np.intp)
    cols = params.column_array()
    steps = np.zeros((N, params.s), dtype=np.uint64)
    steps[1:] = cols[:, changed].T
    coords = np.bitwise_xor.accumulate(steps, axis=0)
    t_all = np.arange(N, dtype=np.uint64)
    return PointSet(coords, params.n, t_all ^ (t_all >> np.uint64(1)), params)


def reverse_bits(values: np.ndarray | int, width: int) -> np.ndarray | int:
    """Reverse the low ``width`` bits; maps digit integers to Walsh indices and back."""
    if isinstance(values, (int, np.integer)):
        return int(format(int(values), f"0{width}b")[::-1], 2) if width else 0
    v = np.asarray(values, dtype=np.uint64)
    out = np.zeros_like(v)
    for b in range(width):
        out |= ((v >> np.uint64(b)) & np.uint64(1)) << np.uint64(width - 1 - b)
    return out


def dual_kernel_dimension(params: NetParams) -> int:
    return params.n * params.s - params.stacked_dual_matrix().rank()


def dual_net_digits(params: NetParams, budget_log2: int = DEFAULT_DUAL_BUDGET) -> np.ndarray:
    """Truncated dual net as a (K, s) uint64 array of digit integers, row 0 being k = 0."""
    S = params.stacked_dual_matrix()
    basis = kernel_basis(S)
    if len(basis) > budget_log2:
        raise BudgetError(
            f"dual net has 2^{len(basis)} elements, budget is 2^{budget_log2}")
    n, s = params.n, params.s
    mask = (1 << n) - 1
    vecs = np.array(
        [[(b.bits >> ((s - 1 - j) * n)) & mask for j in range(s)] for b in basis],
        dtype=np.uint64,
    ).reshape(len(basis), s)
    elems = np.zeros((1, s), dtype=np.uint64)
    for b in vecs:
        elems = np.concatenate([elems, elems ^ b])
    return elems


def dual_net(params: NetParams, budget_log2: int = DEFAULT_DUAL_BUDGET) -> list[MultiIndex]:
    """All k with k_j < 2^n and sum_j C_j^T vec(k_j) = 0, including k = 0."""
    digits = dual_net_digits(params, budget_log2)
    ks = reverse_bits(digits, params.n)
    return [tuple(int(v) for v in row) for row in ks.tolist()]


def format_net(params: NetParams) -> str:
    blocks = []
    for C in params.matrices:
        blocks.append("\n".join("".join(str(b) for b in row) for row in C.to_array().tolist()))
    return f"{params.s} {params.n} {params.m}\n" + "\n\n".join(blocks) + "\n"


def parse_net(text: str) -> NetParams:
    lines = text.splitlines()
    if not lines:
        raise NetFormatError("empty net file")
    try:
        s, n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise NetFormatError(f"bad header line {lines[0]!r}; expected 's n m'") from exc
    if s < 1 or not (n >= m >= 1) or n > MAX_DIGITS:
        raise NetFormatError(f"invalid dimensions s={s} n={n} m={m}")
    body = lines[1:]
    matrices = []
    pos = 0
    for j in range(s):
        if j > 0:
            if pos >= len(body) or body[pos].strip():
                raise NetFormatError(f"expected blank line before matrix {j + 1}")
            pos += 1
        rows = body[pos:pos + n]
        if len(rows) != n:
            raise NetFormatError(f"matrix {j + 1}: expected {n} rows, got {len(rows)}")
        for r, row in enumerate(rows):
            row = row.strip()
            if len(row) != m or set(row) - {"0", "1"}:
                raise NetFormatError(
                    f"matrix {j + 1} row {r + 1}: expected {m} characters of 0/1, got {row!r}")
        matrices.append(BitMatrix.from_rows([[int(c) for c in row.strip()] for row in rows]))
        pos += n
    if any(line.strip() for line in body[pos:]):
        raise NetFormatError("trailing content after last matrix")
    return NetParams(s, n, m, tuple(matrices))


def read_net(path: str | Path) -> NetParams:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise NetFormatError(f"cannot read {path}: {exc}") from exc
    return parse_net(text)


def write_net(params: NetParams, path: str | Path) -> None:
    Path(path).write_text(format_net(params), encoding="utf-8", newline="\n")


def net_from_columns(n: int, columns: Sequence[Sequence[Sequence[int]]]) -> NetParams:
    """Build a net from per-coordinate lists of columns given top digit first."""
    mats = []
    for cols in columns:
        rows = [[col[i] for col in cols] for i in range(n)]
        mats.append(BitMatrix.from_rows(rows))
    return NetParams(len(mats), n, mats[0].cols, tuple(mats))
