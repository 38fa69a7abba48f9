"""Dense bit-packed linear algebra over GF(2).

Rows are Python ints used as bitsets (bit j of ``rows[i]`` is the entry at
row i, column j), so row operations are single machine-level XORs of
arbitrary-width words.  All functions are pure; matrices are immutable.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class BinMatrix:
    """Binary matrix with bit-packed rows.  0xc and rx0 shapes are valid."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[int], ncols: int):
        if ncols < 0:
            raise ValueError(f"negative column count {ncols}")
        mask = (1 << ncols) - 1
        packed = []
        for r in rows:
            if r < 0:
                raise ValueError("negative row bitset")
            if r & ~mask:
                raise ValueError(f"row has bits beyond column {ncols}")
            packed.append(r)
        self.rows = tuple(packed)
        self.nrows = len(packed)
        self.ncols = ncols

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int | None = None) -> "BinMatrix":
        """Build from an iterable of 0/1 row lists."""
        lists = [list(r) for r in rows]
        if ncols is None:
            if not lists:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(lists[0])
        packed = []
        for r in lists:
            if len(r) != ncols:
                raise ValueError(f"ragged row: expected {ncols} entries, got {len(r)}")
            v = 0
            for j, bit in enumerate(r):
                if bit & 1:
                    v |= 1 << j
            packed.append(v)
        return cls(packed, ncols)

    @classmethod
    def from_support(cls, supports: Iterable[Iterable[int]], ncols: int) -> "BinMatrix":
        """Build from an iterable of column-index lists (0-based)."""
        packed = []
        for sup in supports:
            v = 0
            for j in sup:
                if not 0 <= j < ncols:
                    raise ValueError(f"column index {j} out of range for {ncols} columns")
                v ^= 1 << j
            packed.append(v)
        return cls(packed, ncols)

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinMatrix":
        return cls([0] * nrows, ncols)

    # -- views --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def row_support(self, i: int) -> list[int]:
        """Sorted column indices of the ones in row i."""
        return sorted(bit_indices(self.rows[i]))

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def col_weights(self) -> list[int]:
        w = [0] * self.ncols
        for r in self.rows:
            for j in bit_indices(r):
                w[j] += 1
        return w

    def max_row_weight(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def max_col_weight(self) -> int:
        return max(self.col_weights(), default=0)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinMatrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.ncols))

    def __repr__(self) -> str:
        return f"BinMatrix({self.nrows}x{self.ncols})"


def bit_indices(v: int) -> Iterator[int]:
    """Yield the set-bit positions of v in ascending order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def parity(v: int) -> int:
    return v.bit_count() & 1


# -- elimination core ------------------------------------------------


def echelon(rows: Iterable[int]) -> list[tuple[int, int]]:
    """Forward-eliminate rows; return (pivot_col, row) pairs sorted by pivot.

    Pivot is the first (lowest-index) nonzero column of each surviving row,
    so the result is deterministic for a fixed input order.
    """
    pivots: list[tuple[int, int]] = []
    for v in rows:
        v = reduce_vector(v, pivots)
        if v:
            pc = (v & -v).bit_length() - 1
            pivots.append((pc, v))
            pivots.sort(key=lambda t: t[0])
    return pivots


def reduce_vector(v: int, pivots: list[tuple[int, int]]) -> int:
    """Reduce v against echelon pivot rows; zero iff v is in their span."""
    for pc, row in pivots:
        if (v >> pc) & 1:
            v ^= row
    return v


def rank(a: BinMatrix) -> int:
    """Rank over GF(2); the input is not modified."""
    return len(echelon(a.rows))


def mat_mul(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    """Matrix product over GF(2) (XOR-accumulate)."""
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch: {a.shape} x {b.shape}")
    out = []
    for r in a.rows:
        acc = 0
        for j in bit_indices(r):
            acc ^= b.rows[j]
        out.append(acc)
    return BinMatrix(out, b.ncols)


def mat_vec(a: BinMatrix, v: int) -> int:
    """a . v for a bit-vector v over the columns of a; returns a row-bitset."""
    out = 0
    for i, r in enumerate(a.rows):
        if parity(r & v):
            out |= 1 << i
    return out


def transpose(a: BinMatrix) -> BinMatrix:
    cols = [0] * a.ncols
    for i, r in enumerate(a.rows):
        for j in bit_indices(r):
            cols[j] |= 1 << i
    return BinMatrix(cols, a.nrows)


def rref(a: BinMatrix) -> list[tuple[int, int]]:
    """Fully reduced echelon pivots of a: each pivot column has a single 1."""
    pivots = echelon(a.rows)
    cols = [pc for pc, _ in pivots]
    rows = [row for _, row in pivots]
    for i in range(len(rows) - 1, -1, -1):
        for j in range(i):
            if (rows[j] >> cols[i]) & 1:
                rows[j] ^= rows[i]
    return list(zip(cols, rows))


def kernel_basis(a: BinMatrix) -> BinMatrix:
    """Basis of the right kernel {v : a.v = 0}, one vector per matrix row.

    Row count is always ncols - rank(a); rows are ordered by their free
    column, which makes the basis reproducible.
    """
    reduced = rref(a)
    pivot_cols = {pc for pc, _ in reduced}
    out = []
    for free in range(a.ncols):
        if free in pivot_cols:
            continue
        v = 1 << free
        for pc, row in reduced:
            if (row >> free) & 1:
                v |= 1 << pc
        out.append(v)
    return BinMatrix(out, a.ncols)


def rowspace_contains(a: BinMatrix, v: int, pivots: list[tuple[int, int]] | None = None) -> bool:
    """True iff bit-vector v lies in the row span of a."""
    if v >> a.ncols:
        raise ValueError(f"vector has bits beyond column {a.ncols}")
    if pivots is None:
        pivots = echelon(a.rows)
    return reduce_vector(v, pivots) == 0


def solve(a: BinMatrix, b: int) -> int | None:
    """One solution x of a.x = b over GF(2), or None when inconsistent."""
    if b >> a.nrows:
        raise ValueError("right-hand side has bits beyond the row count")
    cols = transpose(a).rows
    pivots: list[tuple[int, int, int]] = []
    for j, v in enumerate(cols):
        combo = 1 << j
        for pc, row, pcombo in pivots:
            if (v >> pc) & 1:
                v ^= row
                combo ^= pcombo
        if v:
            pc = (v & -v).bit_length() - 1
            pivots.append((pc, v, combo))
            pivots.sort(key=lambda t: t[0])
    combo = 0
    for pc, row, pcombo in pivots:
        if (b >> pc) & 1:
            b ^= row
            combo ^= pcombo
    return combo if b == 0 else None


def quotient_dim(ker_of: BinMatrix, rs_of: BinMatrix) -> int:
    """dim ker(ker_of) - rank(rs_of), checking rs(rs_of) <= ker(ker_of)."""
    if ker_of.ncols != rs_of.ncols:
        raise ValueError(f"column mismatch: {ker_of.shape} vs {rs_of.shape}")
    prod = mat_mul(ker_of, transpose(rs_of))
    if not prod.is_zero():
        raise ValueError("row space is not contained in the kernel (non-CSS pair)")
    return ker_of.ncols - rank(ker_of) - rank(rs_of)


# -- block composition -----------------------------------------------


def kron(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    """Kronecker product, index (ia*b.nrows + ib, ja*b.ncols + jb)."""
    out = []
    for ra in a.rows:
        for rb in b.rows:
            v = 0
            for ja in bit_indices(ra):
                v |= rb << (ja * b.ncols)
            out.append(v)
    return BinMatrix(out, a.ncols * b.ncols)


def hstack(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    if a.nrows != b.nrows:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    return BinMatrix(
        [ra | (rb << a.ncols) for ra, rb in zip(a.rows, b.rows)], a.ncols + b.ncols
    )


def vstack(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    if a.ncols != b.ncols:
        raise ValueError(f"column mismatch: {a.shape} vs {b.shape}")
    return BinMatrix(list(a.rows) + list(b.rows), a.ncols)


def direct_sum(a: BinMatrix, b: BinMatrix) -> BinMatrix:
    rows = list(a.rows) + [r << a.ncols for r in b.rows]
    return BinMatrix(rows, a.ncols + b.ncols)


def block_matrix(grid: Sequence[Sequence[BinMatrix]]) -> BinMatrix:
    """Assemble a matrix from a rectangular grid of blocks."""
    stripes = []
    for row_blocks in grid:
        stripe = row_blocks[0]
        for blk in row_blocks[1:]:
            stripe = hstack(stripe, blk)
        stripes.append(stripe)
    out = stripes[0]
    for stripe in stripes[1:]:
        out = vstack(out, stripe)
    return out
