"""Exact mod-2 scalar arithmetic and dense GF(2) linear algebra.

Vectors and matrices are bit-packed into Python ints, so row operations
are single XORs regardless of width.  Everything is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


def binom_mod2(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) reduced mod 2.

    Returns 0 whenever the pair falls outside 0 <= k <= n; otherwise
    Lucas' theorem: C(n, k) is odd iff every binary digit of k is at
    most the corresponding digit of n.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


@dataclass(frozen=True)
class BitVector:
    """A vector over GF(2), coordinates packed little-endian into an int."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("payload has bits outside the declared length")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise IndexError(f"coordinate {i} out of range for length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"coordinate {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def weight(self) -> int:
        return bin(self.bits).count("1")


@dataclass(frozen=True)
class BitMatrix:
    """A dense matrix over GF(2); each row is a bit-packed int."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError("row count does not match payload")
        for r in self.data:
            if r < 0 or r >> self.cols:
                raise ValueError("row has bits outside the declared width")

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[int]) -> "BitMatrix":
        data = tuple(rows)
        return cls(len(data), cols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("entry out of range")
        return (self.data[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.cols):
            bits = 0
            for i in range(self.rows):
                bits |= ((self.data[i] >> j) & 1) << i
            cols.append(bits)
        return BitMatrix(self.cols, self.rows, tuple(cols))


def mat_vec(m: BitMatrix, x: BitVector) -> BitVector:
    """Matrix-vector product over GF(2), x as a column vector."""
    if x.length != m.cols:
        raise ValueError("dimension mismatch")
    bits = 0
    for i, row in enumerate(m.data):
        bits |= (bin(row & x.bits).count("1") & 1) << i
    return BitVector(m.rows, bits)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2)."""
    if a.cols != b.rows:
        raise ValueError("dimension mismatch")
    out = []
    for row in a.data:
        acc = 0
        r = row
        while r:
            low = r & -r
            acc ^= b.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.rows, b.cols, tuple(out))


def _eliminate(rows: list[int], cols: int) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        mask = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & mask), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & mask:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: BitMatrix) -> int:
    """Rank of the matrix over GF(2)."""
    _, pivots = _eliminate(list(m.data), m.cols)
    return len(pivots)


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """An independent spanning set of {x : Mx = 0}."""
    rows, pivots = _eliminate(list(m.data), m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for r, p in enumerate(pivots):
            if (rows[r] >> free) & 1:
                bits |= 1 << p
        basis.append(BitVector(m.cols, bits))
    return basis


class Span:
    """Incrementally maintained row span; rows are bit-packed ints."""

    def __init__(self):
        self._pivots: dict[int, int] = {}  # pivot bit position -> reduced row

    def add(self, bits: int) -> bool:
        """Reduce against the span; True iff the row was independent."""
        while bits:
            top = bits.bit_length() - 1
            row = self._pivots.get(top)
            if row is None:
                self._pivots[top] = bits
                return True
            bits ^= row
        return False

    def __len__(self) -> int:
        return len(self._pivots)


def solve(m: BitMatrix, b: BitVector) -> Optional[BitVector]:
    """Some x with Mx = b, or None if the system is unsolvable."""
    if b.length != m.rows:
        raise ValueError("dimension mismatch")
    aug = [row | (((b.bits >> i) & 1) << m.cols) for i, row in enumerate(m.data)]
    rows, pivots = _eliminate(aug, m.cols)
    mask = (1 << m.cols) - 1
    for r in range(len(pivots), len(rows)):
        if rows[r] & ~mask:
            return None
    bits = 0
    for r, p in enumerate(pivots):
        if rows[r] >> m.cols:
            bits |= 1 << p
    return BitVector(m.cols, bits)
