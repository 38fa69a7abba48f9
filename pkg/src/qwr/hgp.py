"""Hypergraph products and higher-dimensional products of 1-complexes.

The total complex of a tensor product orders each graded piece by
descending degree of the left factor; the same convention drives the
balanced-code layout, so products and thickenings agree bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codes import INF, ChainComplex, ClassicalCode, CssCode, classical_distance, complex_to_css
from .f2la import BinMatrix, block_matrix, kron, rank, transpose


def one_complex(c: ClassicalCode, dualized: bool = False) -> ChainComplex:
    """Two-term complex of a classical code: d_1 = H, or H^T when dualized."""
    return ChainComplex((transpose(c.h) if dualized else c.h,))


def tensor_complex(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Total complex of the double complex, no signs over GF(2)."""
    la, lb = a.length, b.length

    def blocks(total: int) -> list[tuple[int, int]]:
        return [(i, total - i) for i in range(min(total, la), -1, -1) if total - i <= lb]

    boundaries = []
    for total in range(la + lb, 0, -1):
        src = blocks(total)
        dst = blocks(total - 1)
        dst_pos = {blk: t for t, blk in enumerate(dst)}
        grid = [
            [BinMatrix.zeros(a.dim(i) * b.dim(j), a.dim(si) * b.dim(sj)) for (si, sj) in src]
            for (i, j) in dst
        ]
        for s, (i, j) in enumerate(src):
            if i >= 1 and (i - 1, j) in dst_pos:
                grid[dst_pos[(i - 1, j)]][s] = kron(a.boundary(i), BinMatrix.identity(b.dim(j)))
            if j >= 1 and (i, j - 1) in dst_pos:
                grid[dst_pos[(i, j - 1)]][s] = kron(BinMatrix.identity(a.dim(i)), b.boundary(j))
        boundaries.append(block_matrix(grid))
    return ChainComplex(tuple(boundaries))


def hgp(c1: ClassicalCode, c2: ClassicalCode) -> CssCode:
    """Hypergraph product of two classical codes (second factor dualized)."""
    prod = tensor_complex(one_complex(c1), one_complex(c2, dualized=True))
    return complex_to_css(prod, 1)


@dataclass(frozen=True)
class ProductSpec:
    """D classical factors, per-factor dualization flags, homology level."""

    factors: tuple[ClassicalCode, ...]
    level: int
    dualized: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        if not 1 <= self.level <= len(self.factors) - 1:
            raise ValueError(f"level must be in 1..{len(self.factors) - 1}")
        if not self.dualized:
            flags = tuple(i + 1 > self.level for i in range(len(self.factors)))
            object.__setattr__(self, "dualized", flags)
        elif len(self.dualized) != len(self.factors):
            raise ValueError("one dualization flag per factor")


@dataclass(frozen=True)
class ProductLayout:
    """Qubit-level block structure of a higher-dimensional product."""

    level: int
    qubit_blocks: tuple[tuple[tuple[int, ...], int], ...]  # (degrees per factor, size)


def higher_dim_hgp(spec: ProductSpec) -> tuple[CssCode, ProductLayout]:
    """Iterated tensor product of 1-complexes, read off at the given level."""
    complexes = [one_complex(c, d) for c, d in zip(spec.factors, spec.dualized)]
    prod = complexes[0]
    for nxt in complexes[1:]:
        prod = tensor_complex(prod, nxt)
    code = complex_to_css(prod, spec.level)
    layout = ProductLayout(spec.level, tuple(_level_blocks(complexes, spec.level)))
    return code, layout


def _level_blocks(complexes, level):
    """Degree tuples (descending-left order) and sizes at one total degree."""

    def rec(idx: int, remaining: int):
        if idx == len(complexes) - 1:
            if remaining <= complexes[idx].length:
                yield (remaining,), complexes[idx].dim(remaining)
            return
        top = min(remaining, complexes[idx].length)
        for d in range(top, -1, -1):
            for tail, size in rec(idx + 1, remaining - d):
                yield (d,) + tail, complexes[idx].dim(d) * size

    return [(degrees, size) for degrees, size in rec(0, level)]


@dataclass(frozen=True)
class DistancePrediction:
    d_x: int | float
    d_z: int | float
    exact: bool


def kunneth_distance_predictor(spec: ProductSpec) -> DistancePrediction:
    """Fold the product-distance recursion over the factors, left to right.

    Maintains homology and cohomology distances of the growing product per
    level, updating both through each 1-complex factor with the infinite
    convention (a trivial group has distance inf).  The values are exact
    when every factor check matrix has full row rank.
    """
    exact = all(c.full_row_rank for c in spec.factors)
    d_hom, d_coh = _one_complex_distances(spec.factors[0], spec.dualized[0])
    for c, dual in zip(spec.factors[1:], spec.dualized[1:]):
        b_hom, b_coh = _one_complex_distances(c, dual)
        levels = len(d_hom)
        new_hom = []
        new_coh = []
        for j in range(levels + 1):
            lower_h = d_hom[j - 1] if j >= 1 else INF
            same_h = d_hom[j] if j < levels else INF
            new_hom.append(min(lower_h * b_hom[1], same_h * b_hom[0]))
            lower_c = d_coh[j - 1] if j >= 1 else INF
            same_c = d_coh[j] if j < levels else INF
            new_coh.append(min(lower_c * b_coh[1], same_c * b_coh[0]))
        d_hom, d_coh = new_hom, new_coh
    return DistancePrediction(d_coh[spec.level], d_hom[spec.level], exact)


def _one_complex_distances(c: ClassicalCode, dualized: bool):
    """([d_0, d_1], [d^0, d^1]) of the code's 1-complex."""
    m = transpose(c.h) if dualized else c.h
    d1 = _min_weight_kernel(m)
    d0 = _min_weight_off_rowspace(transpose(m))
    c0 = _min_weight_kernel(transpose(m))
    c1 = _min_weight_off_rowspace(m)
    return [d0, d1], [c0, c1]


def _min_weight_kernel(m: BinMatrix) -> int | float:
    ker = ClassicalCode(m)
    return classical_distance(ker)


def _min_weight_off_rowspace(m: BinMatrix) -> int | float:
    """Min weight of a vector outside the row space: 1 unless it is everything."""
    return INF if rank(m) == m.ncols else 1
