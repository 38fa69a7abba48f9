"""Single-ancilla syndrome-extraction schedules and their constructors.

A schedule is an ordered list of stabilizer measurements; each step carries
the explicit entangling-gate order over the stabilizer's support.  The
constructors here mirror how a schedule for a code is adapted to its
copied / gauged / balanced / coned transform, keeping the gate orders that
the preservation arguments rely on.  "Any order" freedoms are fixed to
ascending index so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .codes import CssCode
from .reduce import BalanceMap, CopyMap, GaugeMap


@dataclass(frozen=True)
class Step:
    basis: str
    row: int
    order: tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    steps: tuple[Step, ...]

    def validate(self, q: CssCode) -> None:
        """Check exact row cover and exact-support gate orders against q."""
        seen = {"X": set(), "Z": set()}
        for s in self.steps:
            h = q.h(s.basis)
            if not 0 <= s.row < h.nrows:
                raise ValueError(f"{s.basis} row {s.row} out of range")
            if s.row in seen[s.basis]:
                raise ValueError(f"duplicate step for {s.basis} row {s.row}")
            seen[s.basis].add(s.row)
            support = set(h.row_support(s.row))
            if len(s.order) != len(set(s.order)) or set(s.order) != support:
                raise ValueError(f"gate order of {s.basis} row {s.row} is not its support")
        if len(seen["X"]) != q.n_x or len(seen["Z"]) != q.n_z:
            raise ValueError("schedule does not cover every stabilizer row exactly once")

    def step_for(self, basis: str, row: int) -> Step:
        for s in self.steps:
            if s.basis == basis and s.row == row:
                return s
        raise KeyError((basis, row))


def baseline_schedule(q: CssCode, seed: int = 0) -> Schedule:
    """Seed 0: matrix order with ascending gate order; otherwise seeded-random."""
    steps = [Step("X", r, tuple(q.h_x.row_support(r))) for r in range(q.n_x)]
    steps += [Step("Z", r, tuple(q.h_z.row_support(r))) for r in range(q.n_z)]
    if seed != 0:
        rng = random.Random(seed)
        rng.shuffle(steps)
        steps = [Step(s.basis, s.row, tuple(rng.sample(s.order, len(s.order)))) for s in steps]
    return Schedule(tuple(steps))


def enumerate_random_schedules(q: CssCode, count: int, seed: int = 0) -> list[Schedule]:
    """count schedules with independent step and gate orders, seeded."""
    rng = random.Random(seed)
    return [baseline_schedule(q, rng.randrange(1, 1 << 62)) for _ in range(count)]


def copied_schedule(m: Schedule, cm: CopyMap) -> Schedule:
    """Adapt a pre-copy schedule to the copied code.

    X steps act on the assigned copies in the same order; Z steps entangle
    each copy group's first halves group-by-group, then the second halves;
    gluing checks are measured at the end in generation order.
    """
    half = cm.q_x // 2
    steps = []
    for s in m.steps:
        if s.basis == "X":
            try:
                order = tuple(cm.new_qubit(i, cm.assigned_copy[(s.row, i)]) for i in s.order)
            except KeyError as e:
                raise ValueError(f"CopyMap does not cover X row {s.row}: {e}") from e
            steps.append(Step("X", s.row, order))
        else:
            first = [cm.new_qubit(i, j) for i in s.order for j in range(half)]
            second = [cm.new_qubit(i, j) for i in s.order for j in range(half, cm.q_x)]
            steps.append(Step("Z", s.row, tuple(first + second)))
    for row_idx, i, j in cm.glue_rows:
        steps.append(Step("X", row_idx, (cm.new_qubit(i, j), cm.new_qubit(i, j + 1))))
    return Schedule(tuple(steps))


def gauged_schedule(m: Schedule, gm: GaugeMap, cm: CopyMap | None = None) -> Schedule:
    """Adapt a copied-code schedule to the copied-and-gauged code.

    Each split X step becomes its chain of split rows, measured consecutively
    with ascending gate order.  Z steps interleave the gauge qubits between
    the two half-passes over the copy groups.
    """
    group = cm.q_x if cm is not None else 1
    half = group // 2
    steps = []
    for s in m.steps:
        if s.basis == "X":
            rows = gm.split_rows.get(s.row)
            if rows is None:
                raise ValueError(f"GaugeMap does not cover X row {s.row}")
            if len(rows) == 1:
                steps.append(Step("X", rows[0], s.order))
            else:
                for r in rows:
                    steps.append(Step("X", r, tuple(gm.h_x_out.row_support(r))))
        else:
            groups = []
            for qb in s.order:
                g = qb // group
                if g not in groups:
                    groups.append(g)
            new = sorted(gm.z_patch.get(s.row, ()))
            b_half = len(new) // 2
            order = [g * group + j for g in groups for j in range(half)]
            order += new[:b_half]
            order += [g * group + j for g in groups for j in range(half, group)]
            order += new[b_half:]
            steps.append(Step("Z", s.row, tuple(order)))
    return Schedule(tuple(steps))


def balanced_schedule(m: Schedule, bm: BalanceMap) -> Schedule:
    """Adapt a schedule to the balanced (generalized thickened) code.

    Every step of m is replayed once per classical-code column with the same
    gate order inside region A; X steps entangle their region-B qubits last;
    the Z[B] checks are appended at the end in ascending order.
    """
    if bm.dual:
        inner = balanced_schedule(dual_schedule(m), bm.primal())
        return dual_schedule(inner)
    steps = []
    for s in m.steps:
        for col in range(bm.n_c):
            a_part = tuple(bm.a_qubit(i, col) for i in s.order)
            if s.basis == "X":
                b_part = tuple(bm.b_qubit(s.row, c) for c in bm.hc_col_support(col))
                steps.append(Step("X", bm.x_row(s.row, col), a_part + b_part))
            else:
                steps.append(Step("Z", bm.zt_row(s.row, col), a_part))
    for qb in range(bm.n):
        for c in range(bm.n_c - bm.k_c):
            sup = [bm.a_qubit(qb, j) for j in bm.hc_row_support(c)]
            sup += [bm.b_qubit(x, c) for x in bm.hx_col_support(qb)]
            steps.append(Step("Z", bm.zb_row(qb, c), tuple(sorted(sup))))
    return Schedule(tuple(steps))


def dual_schedule(m: Schedule) -> Schedule:
    """Swap the X and Z roles of every step (for transposed codes)."""
    flip = {"X": "Z", "Z": "X"}
    return Schedule(tuple(Step(flip[s.basis], s.row, s.order) for s in m.steps))


def prune_z_steps(m: Schedule, keep: set[int]) -> Schedule:
    """Drop Z steps not in keep and renumber the survivors in keep-order."""
    renum = {old: new for new, old in enumerate(sorted(keep))}
    steps = []
    for s in m.steps:
        if s.basis == "Z":
            if s.row in keep:
                steps.append(Step("Z", renum[s.row], s.order))
        else:
            steps.append(s)
    return Schedule(tuple(steps))


def cone_schedule(m: Schedule, parts, f) -> Schedule:
    """Adapt a pre-cone schedule to the cone code.

    Direct Z steps keep their order; each coned Z step expands into its
    part's qubit-cell rows following the parent step's gate order; X steps
    gain their cone qubits at the end; the new X checks from the cone cells
    follow in ascending order.
    """
    from .cone import ConeIndex

    idx = ConeIndex(parts, f)
    part_of = {p.parent_z_row: p for p in parts}
    steps = []
    for s in m.steps:
        if s.basis == "X":
            extra = idx.x_row_cone_qubits(s.row)
            steps.append(Step("X", s.row, s.order + tuple(extra)))
        elif s.row in idx.retained_pos:
            steps.append(Step("Z", idx.retained_pos[s.row], s.order))
        else:
            part = part_of[s.row]
            for qb in s.order:
                row = idx.one_cell_row(part, qb)
                steps.append(Step("Z", row, tuple(idx.one_cell_support(part, qb))))
    for part in parts:
        for ci in range(len(part.minus_one_cells)):
            row = idx.minus_cell_row(part, ci)
            steps.append(Step("X", row, tuple(idx.minus_cell_support(part, ci))))
    return Schedule(tuple(steps))


# -- text format ------------------------------------------------------


def format_schedule(m: Schedule) -> str:
    """One step per line: `X|Z <row> : q1 q2 ...` with 1-based indices."""
    lines = []
    for s in m.steps:
        qubits = " ".join(str(qb + 1) for qb in s.order)
        lines.append(f"{s.basis} {s.row + 1} : {qubits}".rstrip())
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> Schedule:
    steps = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        head, _, tail = line.partition(":")
        fields = head.split()
        if len(fields) != 2 or fields[0] not in ("X", "Z"):
            raise ValueError(f"line {ln}: expected 'X|Z <row> : ...'")
        try:
            row = int(fields[1]) - 1
            order = tuple(int(t) - 1 for t in tail.split())
        except ValueError as e:
            raise ValueError(f"line {ln}: {e}") from e
        if row < 0 or any(qb < 0 for qb in order):
            raise ValueError(f"line {ln}: indices are 1-based")
        steps.append(Step(fields[0], row, order))
    return Schedule(tuple(steps))
