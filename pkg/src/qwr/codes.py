"""Classical codes, CSS codes, chain complexes, and exact distances.

Distances are exact at desk scale: exhaustive Gray-code enumeration under a
hard dimension cap, with a meet-in-the-middle fallback over single-qubit
supports.  Infinite distance (no nontrivial codeword / logical) is the float
``inf`` sentinel so that ``min()`` treats it as absorbing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from .f2la import (
    BinMatrix,
    echelon,
    kernel_basis,
    mat_mul,
    mat_vec,
    parity,
    rank,
    reduce_vector,
    transpose,
)

INF = math.inf

CLASSICAL_K_CAP = 24
CSS_ENUM_CAP = 26
MITM_TABLE_CAP = 4_000_000


class CapExceeded(RuntimeError):
    """An exact search would exceed its configured enumeration cap."""


@dataclass(frozen=True)
class ClassicalCode:
    """Linear code given by a parity check matrix (checks x bits)."""

    h: BinMatrix

    @property
    def n(self) -> int:
        return self.h.ncols

    @property
    def k(self) -> int:
        return self.n - rank(self.h)

    @property
    def full_row_rank(self) -> bool:
        return rank(self.h) == self.h.nrows


def repetition_code(length: int) -> ClassicalCode:
    """[length, 1, length] repetition code; row j checks bits j, j+1."""
    if length < 1:
        raise ValueError("repetition code length must be >= 1")
    h = BinMatrix.from_support([(j, j + 1) for j in range(length - 1)], length)
    return ClassicalCode(h)


def hamming_7_4() -> ClassicalCode:
    """[7,4,3] Hamming code; column j+1 is the binary expansion of j+1."""
    rows = [[(c >> b) & 1 for c in range(1, 8)] for b in range(3)]
    return ClassicalCode(BinMatrix.from_rows(rows, 7))


def classical_distance(code: ClassicalCode, k_cap: int = CLASSICAL_K_CAP) -> int | float:
    """Minimum weight of a nonzero codeword; inf when the code is zero."""
    basis = kernel_basis(code.h)
    k = basis.nrows
    if k == 0:
        return INF
    if k > k_cap:
        raise CapExceeded(f"kernel dimension {k} exceeds exhaustive cap {k_cap}")
    return _gray_min_weight(basis.rows)


def _gray_min_weight(basis_rows: tuple[int, ...] | list[int]) -> int:
    """Min weight over all nonzero combinations of the given basis rows."""
    best = None
    v = 0
    for g in range(1, 1 << len(basis_rows)):
        v ^= basis_rows[(g & -g).bit_length() - 1]
        w = v.bit_count()
        if best is None or w < best:
            best = w
    assert best is not None
    return best


class CssCode:
    """CSS code (h_x, h_z) with h_x . h_z^T = 0, checked at construction."""

    def __init__(self, h_x: BinMatrix, h_z: BinMatrix):
        if h_x.ncols != h_z.ncols:
            raise ValueError(f"qubit count mismatch: h_x has {h_x.ncols} columns, h_z has {h_z.ncols}")
        for i, rx in enumerate(h_x.rows):
            for j, rz in enumerate(h_z.rows):
                if parity(rx & rz):
                    raise ValueError(f"stabilizers anticommute: X row {i} vs Z row {j}")
        self.h_x = h_x
        self.h_z = h_z

    @property
    def n(self) -> int:
        return self.h_x.ncols

    @property
    def n_x(self) -> int:
        return self.h_x.nrows

    @property
    def n_z(self) -> int:
        return self.h_z.nrows

    @cached_property
    def rank_x(self) -> int:
        return rank(self.h_x)

    @cached_property
    def rank_z(self) -> int:
        return rank(self.h_z)

    @property
    def k(self) -> int:
        return self.n - self.rank_x - self.rank_z

    @property
    def w_x(self) -> int:
        return self.h_x.max_row_weight()

    @property
    def w_z(self) -> int:
        return self.h_z.max_row_weight()

    @property
    def q_x(self) -> int:
        return self.h_x.max_col_weight()

    @property
    def q_z(self) -> int:
        return self.h_z.max_col_weight()

    def h(self, basis: str) -> BinMatrix:
        """Stabilizer matrix of the given basis ('X' or 'Z')."""
        if basis == "X":
            return self.h_x
        if basis == "Z":
            return self.h_z
        raise ValueError(f"basis must be 'X' or 'Z', got {basis!r}")

    @cached_property
    def x_pivots(self) -> list[tuple[int, int]]:
        return echelon(self.h_x.rows)

    @cached_property
    def z_pivots(self) -> list[tuple[int, int]]:
        return echelon(self.h_z.rows)

    def stab_pivots(self, basis: str) -> list[tuple[int, int]]:
        return self.x_pivots if basis == "X" else self.z_pivots

    def is_logical(self, v: int, basis: str) -> bool:
        """True iff v is a nontrivial logical operator of the given basis."""
        opp = self.h_z if basis == "X" else self.h_x
        if mat_vec(opp, v) != 0:
            return False
        return reduce_vector(v, self.stab_pivots(basis)) != 0

    def transposed(self) -> "CssCode":
        """Same code with the X and Z roles swapped."""
        return CssCode(self.h_z, self.h_x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CssCode) and self.h_x == other.h_x and self.h_z == other.h_z

    def __repr__(self) -> str:
        return f"CssCode(n={self.n}, k={self.k}, n_x={self.n_x}, n_z={self.n_z})"


def css_from_matrices(h_x: BinMatrix, h_z: BinMatrix) -> CssCode:
    """Validated CSS code from two parity check matrices."""
    return CssCode(h_x, h_z)


@dataclass(frozen=True)
class ChainComplex:
    """Boundary maps [d_L, ..., d_1]; d_i maps level i (cols) to i-1 (rows)."""

    boundaries: tuple[BinMatrix, ...]
    dims: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.boundaries:
            dims = [self.boundaries[0].ncols]
            for b in self.boundaries:
                dims.append(b.nrows)
            for hi, lo in zip(self.boundaries, self.boundaries[1:]):
                if lo.ncols != hi.nrows:
                    raise ValueError(f"adjacent dimension mismatch: {lo.shape} after {hi.shape}")
                if not mat_mul(lo, hi).is_zero():
                    raise ValueError("boundary composition is nonzero")
            object.__setattr__(self, "dims", tuple(reversed(dims)))
        else:
            if len(self.dims) != 1:
                raise ValueError("a map-free complex needs exactly one explicit dimension")

    @property
    def length(self) -> int:
        return len(self.boundaries)

    def dim(self, level: int) -> int:
        return self.dims[level]

    def boundary(self, i: int) -> BinMatrix:
        """The map out of level i (1-based), as a matrix of shape dim(i-1) x dim(i)."""
        if not 1 <= i <= self.length:
            raise ValueError(f"no boundary map at level {i}")
        return self.boundaries[self.length - i]


def css_to_complex(q: CssCode) -> ChainComplex:
    """Three-term complex with d_2 = h_z^T and d_1 = h_x."""
    return ChainComplex((transpose(q.h_z), q.h_x))


def complex_to_css(c: ChainComplex, level: int) -> CssCode:
    """CSS code at homology level a: h_x = d_a, h_z = d_{a+1}^T."""
    if not 1 <= level <= c.length - 1:
        raise ValueError(f"level must be in 1..{c.length - 1}, got {level}")
    return CssCode(c.boundary(level), transpose(c.boundary(level + 1)))


def logical_basis(q: CssCode, basis: str) -> BinMatrix:
    """k rows spanning the logical classes of the given basis.

    Representatives live in ker(opposite H) outside rs(same H); each one is
    greedily weight-reduced by stabilizer rows, so the result is deterministic
    for a fixed row order.
    """
    same = q.h(basis)
    opp = q.h("Z" if basis == "X" else "X")
    ker = kernel_basis(opp)
    pivots = list(q.stab_pivots(basis))
    reps = []
    for v in ker.rows:
        red = reduce_vector(v, pivots)
        if red:
            pc = (red & -red).bit_length() - 1
            pivots.append((pc, red))
            pivots.sort(key=lambda t: t[0])
            reps.append(v)
    out = []
    for v in reps:
        improved = True
        while improved:
            improved = False
            for s in same.rows:
                if (v ^ s).bit_count() < v.bit_count():
                    v ^= s
                    improved = True
        out.append(v)
    return BinMatrix(out, q.n)


def css_distance(
    q: CssCode,
    basis: str,
    enum_cap: int = CSS_ENUM_CAP,
    table_cap: int = MITM_TABLE_CAP,
) -> int | float:
    """Exact minimum weight of a nontrivial logical operator, or inf.

    Enumerates the full kernel of the opposite check matrix by Gray code when
    its dimension (k + rank of same-basis checks) fits under enum_cap;
    otherwise runs an iterative-deepening meet-in-the-middle over single-qubit
    supports.  Raises CapExceeded when neither route fits.
    """
    if q.k == 0:
        return INF
    same = q.h(basis)
    r_same = q.rank_x if basis == "X" else q.rank_z
    dim = q.k + r_same
    if dim <= enum_cap:
        logicals = logical_basis(q, basis)
        stab_rows = [row for _, row in q.stab_pivots(basis)]
        rows = list(logicals.rows) + stab_rows
        k = logicals.nrows
        best = None
        v = 0
        lam = 0
        for g in range(1, 1 << dim):
            idx = (g & -g).bit_length() - 1
            v ^= rows[idx]
            if idx < k:
                lam ^= 1 << idx
            if lam:
                w = v.bit_count()
                if best is None or w < best:
                    best = w
        assert best is not None
        return best
    found = _unit_mitm_distance(q, basis, table_cap)
    if found is None:
        raise CapExceeded(
            "code too large for exhaustive css_distance; use the fault-search bound "
            "(effective_distance with an explicit max_d) instead"
        )
    return found


def _unit_mitm_distance(q: CssCode, basis: str, table_cap: int) -> int | None:
    """Iterative-deepening MITM over unit vectors; None when the cap stops it."""
    opp = q.h("Z" if basis == "X" else "X")
    pair_basis = logical_basis(q, "Z" if basis == "X" else "X")
    syn = [mat_vec(opp, 1 << j) for j in range(q.n)]
    pair = [mat_vec(pair_basis, 1 << j) for j in range(q.n)]
    for t in range(1, q.n + 1):
        t_small = t // 2
        t_big = t - t_small
        if comb(q.n, t_small) > table_cap or comb(q.n, t_big) > 100 * table_cap:
            return None
        if _mitm_level(q.n, syn, pair, t_small, t_big) is not None:
            return t
    return INF


def _mitm_level(n_items, syn, pair, t_small, t_big):
    """One MITM level: find disjointly-split index sets whose XOR is logical."""
    table: dict[int, set[int]] = {}
    for subset in combinations(range(n_items), t_small):
        s = p = 0
        for i in subset:
            s ^= syn[i]
            p ^= pair[i]
        table.setdefault(s, set()).add(p)
    for subset in combinations(range(n_items), t_big):
        s = p = 0
        for i in subset:
            s ^= syn[i]
            p ^= pair[i]
        bucket = table.get(s)
        if bucket and (len(bucket) > 1 or p not in bucket):
            return subset
    return None


# -- named desk-scale instances --------------------------------------


def steane_code() -> CssCode:
    """[[7,1,3]] code with h_x = h_z = Hamming [7,4] checks."""
    h = hamming_7_4().h
    return CssCode(h, h)


def surface_code_2x3() -> CssCode:
    """Surface patch with d_X = 2 and d_Z = 3.

    Two columns of vertical edges three tall (danglers at both ends), two
    horizontal rungs; 8 qubits, 4 vertex X checks, 3 face Z checks, k = 1.
    """
    # qubits: 0,1 horizontal rungs (y = 0, 1); 2..4 left column verticals
    # (below, middle, above); 5..7 right column verticals.
    x_rows = [
        (0, 2, 3),  # vertex (left, y=0)
        (1, 3, 4),  # vertex (left, y=1)
        (0, 5, 6),  # vertex (right, y=0)
        (1, 6, 7),  # vertex (right, y=1)
    ]
    z_rows = [
        (0, 2, 5),  # bottom face
        (0, 1, 3, 6),  # middle face
        (1, 4, 7),  # top face
    ]
    return CssCode(BinMatrix.from_support(x_rows, 8), BinMatrix.from_support(z_rows, 8))


def ring_face_code(ring_len: int, dangler_vertices: tuple[int, int | None] = (0, None)) -> CssCode:
    """One weight-`ring_len` Z face on a cycle of X vertices, plus two dangling
    qubits that keep k = 1.

    Vertices 0..ring_len-1 carry weight-2 or weight-3 X checks; the single Z
    check is the full ring.  Danglers attach at the given vertices (second
    defaults to the opposite side of the ring).
    """
    if ring_len < 3:
        raise ValueError("ring length must be >= 3")
    d1, d2 = dangler_vertices
    if d2 is None:
        d2 = ring_len // 2
    if d1 == d2:
        raise ValueError("danglers must attach at distinct vertices")
    n = ring_len + 2
    ring_edge = lambda v: v  # edge v connects vertices v, v+1 mod ring_len
    x_rows = []
    for v in range(ring_len):
        sup = [ring_edge((v - 1) % ring_len), ring_edge(v)]
        if v == d1:
            sup.append(ring_len)
        if v == d2:
            sup.append(ring_len + 1)
        x_rows.append(sorted(sup))
    z_rows = [list(range(ring_len))]
    return CssCode(BinMatrix.from_support(x_rows, n), BinMatrix.from_support(z_rows, n))
