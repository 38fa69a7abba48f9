"""Elementary faults of a schedule and exact effective-distance search.

A fault generator is the residual data error left by one elementary fault:
a single data-qubit error, or an ancilla fault at cut position k of a step,
which spreads to the suffix of the step's gate order.  The effective
distance is the least number of generators whose XOR is a nontrivial
logical; it is found by iterative deepening with a meet-in-the-middle table
keyed on (stabilizer syndrome, logical pairing), both linear in the
residual.  A plain combination-enumeration oracle double-checks the search
in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .codes import INF, CapExceeded, CssCode, logical_basis
from .f2la import mat_vec, reduce_vector
from .reduce import BalanceMap
from .schedule import Schedule

MITM_TABLE_CAP = 4_000_000
ORACLE_COMBO_CAP = 100_000_000
DEFAULT_MAX_D = 6


@dataclass(frozen=True)
class FaultGenerator:
    """Residual data-error vector of one elementary fault."""

    kind: str  # "data" | "hook"
    basis: str
    residual: int
    qubit: int | None = None
    step: int | None = None
    row: int | None = None
    step_basis: str | None = None
    cut: int | None = None

    @property
    def origin(self):
        if self.kind == "data":
            return (0, self.qubit, 0)
        return (1, self.step, self.cut)


@dataclass(frozen=True)
class FaultSearchResult:
    distance: int | float
    witness: tuple[FaultGenerator, ...] | None
    basis: str
    exact_up_to: int


def enumerate_faults(q: CssCode, m: Schedule, basis: str, dedup: bool = True) -> list[FaultGenerator]:
    """All fault generators with residuals of the given Pauli type.

    One data fault per qubit; one hook per cut position 1..w-1 of every step
    whose stabilizer has the same Pauli type (only same-type ancilla faults
    propagate to data).  Cuts 0 and w are excluded: the full row is a
    stabilizer and the empty suffix is trivial.  Duplicate residuals keep the
    lowest origin.
    """
    gens = []
    for qb in range(q.n):
        gens.append(FaultGenerator("data", basis, 1 << qb, qubit=qb))
    for si, s in enumerate(m.steps):
        if s.basis != basis:
            continue
        suffix = 0
        rev = []
        for qb in reversed(s.order):
            suffix |= 1 << qb
            rev.append(suffix)
        # rev[i] is the residual for cut position w-1-i; emit k = 1..w-1.
        for k in range(1, len(s.order)):
            gens.append(
                FaultGenerator(
                    "hook", basis, rev[len(s.order) - 1 - k],
                    step=si, row=s.row, step_basis=s.basis, cut=k,
                )
            )
    if not dedup:
        return gens
    seen: dict[int, FaultGenerator] = {}
    for g in gens:
        old = seen.get(g.residual)
        if old is None or g.origin < old.origin:
            seen[g.residual] = g
    return sorted(seen.values(), key=lambda g: g.origin)


def _signatures(q: CssCode, basis: str, gens: list[FaultGenerator]) -> tuple[list[int], int]:
    """Per-generator (syndrome | pairing) signature packed into one int.

    The syndrome is against the opposite check matrix; the pairing is against
    the opposite logical basis.  A residual XOR is a nontrivial logical iff
    its syndrome part is zero and its pairing part is not.
    """
    opp = q.h("Z" if basis == "X" else "X")
    pair_rows = logical_basis(q, "Z" if basis == "X" else "X")
    k = pair_rows.nrows
    sigs = []
    for g in gens:
        syn = mat_vec(opp, g.residual)
        pair = mat_vec(pair_rows, g.residual)
        sigs.append((syn << k) | pair)
    return sigs, k


def effective_distance(
    q: CssCode,
    m: Schedule,
    basis: str,
    max_d: int = DEFAULT_MAX_D,
    generators: list[FaultGenerator] | None = None,
    table_cap: int = MITM_TABLE_CAP,
) -> FaultSearchResult:
    """Exact effective distance up to max_d, else the infinite sentinel.

    Iterative deepening t = 1..max_d; each level splits t into halves and
    meets in the middle on the packed signature.  Any match at the first
    feasible t is a genuine weight-t witness because all lower levels were
    exhausted first.
    """
    if max_d < 1:
        raise ValueError("max_d must be >= 1")
    if q.k == 0:
        return FaultSearchResult(INF, None, basis, max_d)
    gens = enumerate_faults(q, m, basis) if generators is None else generators
    sigs, k = _signatures(q, basis, gens)
    pair_mask = (1 << k) - 1
    n = len(gens)
    for t in range(1, max_d + 1):
        t_small = t // 2
        t_big = t - t_small
        if comb(n, t_small) > table_cap:
            raise CapExceeded(
                f"meet-in-the-middle table for t={t} needs {comb(n, t_small)} entries; "
                f"lower max_d or raise table_cap"
            )
        hit = _mitm_witness(sigs, pair_mask, t_small, t_big)
        if hit is not None:
            # overlapping halves cannot match at the first feasible t: the
            # cancelled XOR would have matched two levels earlier
            assert len(hit) == t
            witness = tuple(gens[i] for i in sorted(hit))
            return FaultSearchResult(t, witness, basis, max_d)
    return FaultSearchResult(INF, None, basis, max_d)


def _mitm_witness(sigs: list[int], pair_mask: int, t_small: int, t_big: int):
    """Indices of a logical-forming split, or None.  Lex-first deterministic."""
    n = len(sigs)
    table: dict[int, dict[int, tuple[int, ...]]] = {}
    for subset in combinations(range(n), t_small):
        sig = 0
        for i in subset:
            sig ^= sigs[i]
        syn = sig & ~pair_mask
        pair = sig & pair_mask
        bucket = table.setdefault(syn, {})
        if pair not in bucket:
            bucket[pair] = subset
    for subset in combinations(range(n), t_big):
        sig = 0
        for i in subset:
            sig ^= sigs[i]
        syn = sig & ~pair_mask
        pair = sig & pair_mask
        bucket = table.get(syn)
        if not bucket:
            continue
        matches = [other for p, other in bucket.items() if p != pair]
        if matches:
            other = min(matches)
            return set(subset) | set(other)
    return None


def oracle_effective_distance(
    q: CssCode,
    m: Schedule,
    basis: str,
    max_d: int = DEFAULT_MAX_D,
    generators: list[FaultGenerator] | None = None,
) -> FaultSearchResult:
    """Brute force over all generator subsets of size <= max_d; test use only."""
    gens = enumerate_faults(q, m, basis) if generators is None else generators
    n = len(gens)
    total = sum(comb(n, t) for t in range(1, max_d + 1))
    if total > ORACLE_COMBO_CAP:
        raise CapExceeded(f"{total} combinations exceed the oracle cap")
    opp = q.h("Z" if basis == "X" else "X")
    pivots = q.stab_pivots(basis)
    for t in range(1, max_d + 1):
        for subset in combinations(range(n), t):
            v = 0
            for i in subset:
                v ^= gens[i].residual
            if mat_vec(opp, v) == 0 and reduce_vector(v, pivots) != 0:
                return FaultSearchResult(t, tuple(gens[i] for i in subset), basis, max_d)
    return FaultSearchResult(INF, None, basis, max_d)


def witness_is_valid(q: CssCode, basis: str, result: FaultSearchResult) -> bool:
    """Re-verify a finite search result independently of the search."""
    if result.witness is None:
        return result.distance == INF
    if len(result.witness) != result.distance:
        return False
    v = 0
    for g in result.witness:
        v ^= g.residual
    return q.is_logical(v, basis)


@dataclass(frozen=True)
class HookAuditReport:
    per_step_max: dict[int, int]
    bound: dict[int, int]
    violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def hook_weight_audit(q: CssCode, m: Schedule) -> HookAuditReport:
    """Check every hook is equivalent to at most floor(w/2) data errors."""
    per_step: dict[int, int] = {}
    bound: dict[int, int] = {}
    violations = []
    for si, s in enumerate(m.steps):
        row = q.h(s.basis).rows[s.row]
        w = len(s.order)
        bound[si] = w // 2
        worst = 0
        suffix = 0
        for qb in reversed(s.order[1:]):
            suffix |= 1 << qb
            reduced = min(suffix.bit_count(), (suffix ^ row).bit_count())
            worst = max(worst, reduced)
        per_step[si] = worst
        if worst > bound[si]:
            violations.append(si)
    return HookAuditReport(per_step, bound, tuple(violations))


@dataclass(frozen=True)
class ComponentAuditReport:
    checked: int
    violations: tuple[FaultGenerator, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def component_weight_audit(
    q_balanced: CssCode, bm: BalanceMap, faults: list[FaultGenerator]
) -> ComponentAuditReport:
    """Check hook residuals stay in one row/column of region A.

    X hooks and Z[T] hooks must touch at most one column of the A grid;
    Z[B] hooks at most one row.  Data faults hold trivially and are skipped.
    """
    if bm.dual:
        raise ValueError("component audit expects a balance_x/thicken map")
    checked = 0
    violations = []
    for g in faults:
        if g.kind != "hook":
            continue
        checked += 1
        rows = set()
        cols = set()
        v = g.residual
        qb = 0
        while v:
            low = v & -v
            idx = low.bit_length() - 1
            coords = bm.a_coords(idx)
            if coords is not None:
                rows.add(coords[0])
                cols.add(coords[1])
            v ^= low
        if g.step_basis == "X":
            bad = len(cols) > 1
        elif g.row is not None and g.row < bm.n_zt:
            bad = len(cols) > 1
        else:
            bad = len(rows) > 1
        if bad:
            violations.append(g)
    return ComponentAuditReport(checked, tuple(violations))
