"""Bit-packed linear algebra over GF(2).

Vectors and matrix columns are packed MSB-first: element ``t`` of a
length-``L`` vector sits at bit ``L - 1 - t`` of a Python int.  With this
layout a column of an n x m generating matrix is already the n-digit
fixed-point integer it contributes to a point coordinate, so generating a
point is a XOR of selected columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError
from .rng import random_bits


@dataclass(frozen=True)
class BitVector:
    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("negative vector length")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError("bits set beyond vector length")

    @classmethod
    def from_list(cls, values: Iterable[int]) -> BitVector:
        values = list(values)
        bits = 0
        for v in values:
            bits = (bits << 1) | (int(v) & 1)
        return cls(bits, len(values))

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(0, length)

    def to_list(self) -> list[int]:
        return [(self.bits >> (self.length - 1 - t)) & 1 for t in range(self.length)]

    def __getitem__(self, t: int) -> int:
        if not 0 <= t < self.length:
            raise IndexError(t)
        return (self.bits >> (self.length - 1 - t)) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise DimensionError("length mismatch in xor")
        return BitVector(self.bits ^ other.bits, self.length)


@dataclass(frozen=True)
class BitMatrix:
    """rows x cols matrix over GF(2), stored as a tuple of packed columns."""

    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.columns) != self.cols:
            raise DimensionError(f"expected {self.cols} columns, got {len(self.columns)}")
        for c in self.columns:
            if c < 0 or c >> self.rows:
                raise DimensionError("column has bits beyond row count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> BitMatrix:
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise DimensionError("ragged rows")
        columns = []
        for l in range(m):
            col = 0
            for i in range(n):
                col = (col << 1) | (int(rows[i][l]) & 1)
            columns.append(col)
        return cls(n, m, tuple(columns))

    @classmethod
    def from_array(cls, array: np.ndarray) -> BitMatrix:
        return cls.from_rows(np.asarray(array, dtype=np.uint8).tolist())

    @classmethod
    def identity(cls, size: int) -> BitMatrix:
        return cls(size, size, tuple(1 << (size - 1 - l) for l in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * cols)

    def entry(self, i: int, l: int) -> int:
        return (self.columns[l] >> (self.rows - 1 - i)) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for l, c in enumerate(self.columns):
            for i in range(self.rows):
                out[i, l] = (c >> (self.rows - 1 - i)) & 1
        return out

    def row_ints(self) -> list[int]:
        """Rows packed MSB-first as cols-bit ints."""
        out = []
        for i in range(self.rows):
            r = 0
            for c in self.columns:
                r = (r << 1) | ((c >> (self.rows - 1 - i)) & 1)
            out.append(r)
        return out

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, tuple(self.row_ints()))

    def rank(self) -> int:
        return len(_echelon(self.row_ints(), self.cols)[1])


def random_matrix(rows: int, cols: int, seed: int) -> BitMatrix:
    """Uniform random matrix; entry (i, l) is stream bit ``l * rows + i``."""
    if cols < 1 or rows < cols:
        raise DimensionError(f"need rows >= cols >= 1, got {rows}x{cols}")
    bits = random_bits(seed, rows * cols).reshape(cols, rows)
    weights = [1 << (rows - 1 - i) for i in range(rows)]
    columns = tuple(sum(w for w, b in zip(weights, col) if b) for col in bits.tolist())
    return BitMatrix(rows, cols, columns)


def row_vec_mul(h: BitVector, M: BitMatrix) -> BitVector:
    """h . M^T: the XOR of the columns of M selected by h."""
    if len(h) != M.cols:
        raise DimensionError(f"vector length {len(h)} != cols {M.cols}")
    acc = 0
    for l, c in enumerate(M.columns):
        if h[l]:
            acc ^= c
    return BitVector(acc, M.rows)


def transpose_mul_vec(M: BitMatrix, v: BitVector) -> BitVector:
    """M^T v; element l is the parity of column l AND v."""
    if len(v) != M.rows:
        raise DimensionError(f"vector length {len(v)} != rows {M.rows}")
    out = 0
    for c in M.columns:
        out = (out << 1) | (bin(c & v.bits).count("1") & 1)
    return BitVector(out, M.cols)


def mat_vec_mul(M: BitMatrix, v: BitVector) -> BitVector:
    """M v over GF(2)."""
    if len(v) != M.cols:
        raise DimensionError(f"vector length {len(v)} != cols {M.cols}")
    return row_vec_mul(v, M)


def _echelon(rows: list[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of packed rows; returns (rows, pivot columns)."""
    rows = list(rows)
    pivots: list[int] = []
    r = 0
    for col in range(width):
        bit = 1 << (width - 1 - col)
        pivot = next((p for p in range(r, len(rows)) if rows[p] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for p in range(len(rows)):
            if p != r and rows[p] & bit:
                rows[p] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {v : M v = 0}; one vector per free column of the RREF."""
    width = M.cols
    reduced, pivots = _echelon(M.row_ints(), width)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = 1 << (width - 1 - free)
        for row, pc in zip(reduced, pivots):
            if row >> (width - 1 - free) & 1:
                v |= 1 << (width - 1 - pc)
        basis.append(BitVector(v, width))
    return basis


def span(basis: Sequence[BitVector], length: int) -> list[BitVector]:
    """All 2^len(basis) combinations of ``basis``."""
    elems = [0]
    for b in basis:
        elems += [e ^ b.bits for e in elems]
    return [BitVector(e, length) for e in elems]
