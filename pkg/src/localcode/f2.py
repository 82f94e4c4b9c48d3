"""Exact linear algebra over F2 on int bitsets.

Vectors are packed into Python ints (bit i = coordinate i), matrices are
kept in sparse triplet form and densified to per-row / per-column bitmasks
for elimination.  Everything here is exact; there is no floating point and
no probabilistic shortcut.  All values are immutable after construction, so
they can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


class GuardExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size guard."""


# Exhaustive coset searches cost 2**dim; this is the default ceiling.
MAX_SEARCH_DIM = 26


def popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over F2, packed into an int."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits out of range for length")

    @staticmethod
    def zeros(n: int) -> "BitVector":
        return BitVector(n, 0)

    @staticmethod
    def ones(n: int) -> "BitVector":
        return BitVector(n, (1 << n) - 1)

    @staticmethod
    def from_support(n: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range")
            bits ^= 1 << i
        return BitVector(n, bits)

    @staticmethod
    def from_list(values: Iterable[int]) -> "BitVector":
        vals = list(values)
        bits = 0
        for i, v in enumerate(vals):
            if v & 1:
                bits |= 1 << i
        return BitVector(len(vals), bits)

    def weight(self) -> int:
        return popcount(self.bits)

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    # Addition over F2 is XOR, so v + v = 0.
    __add__ = __xor__

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]


class SparseBitMatrix:
    """Linear map over F2 in sparse triplet form.

    Storage and interchange are sparse; elimination densifies rows or
    columns into int bitmasks, which is exact and fast at desk scale.
    """

    __slots__ = ("rows", "cols", "entries", "_row_masks", "_col_masks")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int]]):
        self.rows = rows
        self.cols = cols
        ents = frozenset((int(r), int(c)) for r, c in entries)
        for r, c in ents:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) out of range for {rows}x{cols}")
        self.entries = ents
        self._row_masks: Optional[list[int]] = None
        self._col_masks: Optional[list[int]] = None

    @staticmethod
    def zero(rows: int, cols: int) -> "SparseBitMatrix":
        return SparseBitMatrix(rows, cols, ())

    @staticmethod
    def identity(n: int) -> "SparseBitMatrix":
        return SparseBitMatrix(n, n, ((i, i) for i in range(n)))

    @staticmethod
    def from_dense(rows: Iterable[Iterable[int]]) -> "SparseBitMatrix":
        mat = [list(r) for r in rows]
        nrows = len(mat)
        ncols = len(mat[0]) if mat else 0
        ents = [(i, j) for i, row in enumerate(mat) for j, v in enumerate(row) if v & 1]
        return SparseBitMatrix(nrows, ncols, ents)

    def row_masks(self) -> list[int]:
        """Row r as an int over column indices."""
        if self._row_masks is None:
            masks = [0] * self.rows
            for r, c in self.entries:
                masks[r] |= 1 << c
            self._row_masks = masks
        return self._row_masks

    def col_masks(self) -> list[int]:
        """Column c as an int over row indices."""
        if self._col_masks is None:
            masks = [0] * self.cols
            for r, c in self.entries:
                masks[c] |= 1 << r
            self._col_masks = masks
        return self._col_masks

    def apply(self, x: int) -> int:
        """Matrix-vector product: x packed over cols, result packed over rows."""
        if x < 0 or x >> self.cols:
            raise ValueError("vector out of range")
        cols = self.col_masks()
        y = 0
        while x:
            low = x & -x
            y ^= cols[low.bit_length() - 1]
            x ^= low
        return y

    def apply_vec(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise ValueError(f"dimension mismatch: vector {v.length}, matrix cols {self.cols}")
        return BitVector(self.rows, self.apply(v.bits))

    def transpose(self) -> "SparseBitMatrix":
        return SparseBitMatrix(self.cols, self.rows, ((c, r) for r, c in self.entries))

    def matmul(self, other: "SparseBitMatrix") -> "SparseBitMatrix":
        """self @ other over F2."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        ocols = other.col_masks()
        ents = []
        for c in range(other.cols):
            b = self.apply(ocols[c])
            while b:
                low = b & -b
                ents.append((low.bit_length() - 1, c))
                b ^= low
        return SparseBitMatrix(self.rows, other.cols, ents)

    def is_zero(self) -> bool:
        return not self.entries

    def row_degree(self, r: int) -> int:
        return popcount(self.row_masks()[r])

    def col_degree(self, c: int) -> int:
        return popcount(self.col_masks()[c])

    def max_row_degree(self) -> int:
        return max((popcount(m) for m in self.row_masks()), default=0)

    def max_col_degree(self) -> int:
        return max((popcount(m) for m in self.col_masks()), default=0)

    def sorted_entries(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseBitMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"SparseBitMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class Echelon:
    """Incremental row echelon over int bitmasks, with combination tracking.

    Pivot of a vector is its highest set bit.  `comb` records which input
    vectors were XORed to produce each stored row, so preimages can be read
    back after reduction.
    """

    def __init__(self) -> None:
        self.pivot_rows: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int, comb: int = 0) -> tuple[int, int]:
        while v:
            p = v.bit_length() - 1
            got = self.pivot_rows.get(p)
            if got is None:
                return v, comb
            v ^= got[0]
            comb ^= got[1]
        return 0, comb

    def add(self, v: int, comb: int = 0) -> bool:
        """Insert v; returns True if it added a new pivot."""
        v, comb = self.reduce(v, comb)
        if v == 0:
            return False
        self.pivot_rows[v.bit_length() - 1] = (v, comb)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    @property
    def dim(self) -> int:
        return len(self.pivot_rows)


def rank(m: SparseBitMatrix) -> int:
    """F2 rank by Gaussian elimination on bit-packed rows."""
    ech = Echelon()
    for row in m.row_masks():
        ech.add(row)
    return ech.dim


def solve(m: SparseBitMatrix, b: BitVector) -> Optional[BitVector]:
    """Some x with m @ x = b, or None when b is outside the image.

    Any valid preimage is acceptable; the one returned is determined by
    the column order.
    """
    if b.length != m.rows:
        raise ValueError(f"dimension mismatch: b has length {b.length}, matrix has {m.rows} rows")
    ech = Echelon()
    for c, colmask in enumerate(m.col_masks()):
        ech.add(colmask, 1 << c)
    residual, comb = ech.reduce(b.bits)
    if residual:
        return None
    x = BitVector(m.cols, comb)
    assert m.apply(x.bits) == b.bits
    return x


def image_echelon(m: SparseBitMatrix) -> Echelon:
    """Echelon basis of the column space (image) of m."""
    ech = Echelon()
    for colmask in m.col_masks():
        ech.add(colmask)
    return ech


def kernel_basis(m: SparseBitMatrix) -> list[BitVector]:
    """Basis of ker m; size equals cols - rank(m)."""
    # Eliminate rows while tracking combinations of unit column vectors is
    # awkward; instead reduce columns against each other.  Column c either
    # introduces a new pivot or reduces to zero through earlier columns,
    # and in the latter case the recorded combination is a kernel vector.
    ech = Echelon()
    basis: list[BitVector] = []
    for c, colmask in enumerate(m.col_masks()):
        residual, comb = ech.reduce(colmask, 1 << c)
        if residual == 0:
            basis.append(BitVector(m.cols, comb | (1 << c)))
        else:
            ech.pivot_rows[residual.bit_length() - 1] = (residual, comb | (1 << c))
    for v in basis:
        assert m.apply(v.bits) == 0
    return basis


def span_iter(basis: list[int]) -> Iterator[int]:
    """All 2**len(basis) elements of the span, in Gray-code order."""
    cur = 0
    yield cur
    n = len(basis)
    for i in range(1, 1 << n):
        cur ^= basis[(i & -i).bit_length() - 1]
        yield cur


def min_weight_nontrivial(
    z_basis: list[BitVector],
    b_basis: list[BitVector],
    *,
    force: bool = False,
    max_dim: int = MAX_SEARCH_DIM,
) -> int:
    """Minimum weight over span(z_basis) minus span(b_basis).

    Exhaustive coset search: complement generators of span(b) inside
    span(z) enumerate the cosets, and each coset is scanned in Gray-code
    order.  Requires span(b) to be a proper subspace of span(z).
    """
    if not z_basis and not b_basis:
        raise ValueError("spans are equal: no nontrivial element")
    n = z_basis[0].length if z_basis else b_basis[0].length
    b_ech = Echelon()
    for v in b_basis:
        if v.length != n:
            raise ValueError("mixed vector lengths")
        b_ech.add(v.bits)
    b_reduced = [row for row, _ in b_ech.pivot_rows.values()]

    z_ech = Echelon()
    for v in z_basis:
        if v.length != n:
            raise ValueError("mixed vector lengths")
        z_ech.add(v.bits)
    for row in b_reduced:
        if not z_ech.contains(row):
            raise ValueError("span(b_basis) not contained in span(z_basis)")

    complement: list[int] = []
    comp_ech = Echelon()
    for row, _ in b_ech.pivot_rows.values():
        comp_ech.add(row)
    for v in z_basis:
        residual, _ = comp_ech.reduce(v.bits)
        if residual:
            comp_ech.add(residual)
            complement.append(residual)
    if not complement:
        raise ValueError("spans are equal: no nontrivial element")

    total_dim = len(complement) + len(b_reduced)
    if total_dim > max_dim and not force:
        raise GuardExceeded(
            f"coset search over 2^{total_dim} exceeds guard 2^{max_dim}; pass force=True to override"
        )

    best = n + 1
    first = True
    for rep in span_iter(complement):
        if first:
            first = False
            continue  # zero combination stays inside span(b)
        for offset in span_iter(b_reduced):
            w = popcount(rep ^ offset)
            if w < best:
                best = w
    return best
