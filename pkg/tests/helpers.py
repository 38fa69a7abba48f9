"""Shared test fixtures: seeded code corpora and independent oracles."""

from __future__ import annotations

import random
from fractions import Fraction

from qwr.codes import ClassicalCode, CssCode
from qwr.f2la import BinMatrix, kernel_basis, mat_vec, rank
from qwr.hgp import hgp


def random_classical(rng: random.Random, n_min=3, n_max=6) -> ClassicalCode:
    """Random full-row-rank check matrix with r < n."""
    while True:
        n = rng.randrange(n_min, n_max + 1)
        r = rng.randrange(1, n)
        rows = [rng.randrange(1, 1 << n) for _ in range(r)]
        h = BinMatrix(rows, n)
        if rank(h) == r:
            return ClassicalCode(h)


def random_css(rng: random.Random, n_min=4, n_max=12) -> CssCode:
    """Random CSS pair: random Z checks, X checks drawn from their kernel."""
    while True:
        n = rng.randrange(n_min, n_max + 1)
        r_z = rng.randrange(1, max(2, n // 2) + 1)
        hz = BinMatrix([rng.randrange(1, 1 << n) for _ in range(r_z)], n)
        ker = kernel_basis(hz)
        if ker.nrows == 0:
            continue
        r_x = rng.randrange(1, ker.nrows + 1)
        rows = []
        for _ in range(r_x):
            v = 0
            while v == 0:
                v = 0
                for kr in ker.rows:
                    if rng.random() < 0.5:
                        v ^= kr
            rows.append(v)
        return CssCode(BinMatrix(rows, n), hz)


def random_hgp(rng: random.Random, n_max=5) -> CssCode:
    return hgp(random_classical(rng, 3, n_max), random_classical(rng, 3, n_max))


def corpus(seed: int, count: int, n_max=12) -> list[CssCode]:
    """Deterministic mixed corpus: kernel-method and HGP instances."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        if i % 5 == 4:
            out.append(random_hgp(rng))
        else:
            out.append(random_css(rng, n_max=n_max))
    return out


def assert_copy_lemma(q, qc, cm):
    """Every count in the copied-code parameter list, plus structure checks."""
    q_x = q.q_x
    assert qc.n == q_x * q.n
    assert qc.k == q.k
    assert qc.n_x == q.n_x + (q_x - 1) * q.n
    assert qc.n_z == q.n_z
    assert qc.q_x == min(q_x, 3)
    assert qc.w_z == q_x * q.w_z
    assert qc.q_z == q.q_z
    # gluing checks have weight 2, so the row-weight equality needs w_X >= 2
    if q.w_x >= 2 or q_x == 1:
        assert qc.w_x == q.w_x
    else:
        assert qc.w_x == max(q.w_x, 2)
    for i in range(q.n):
        copies = [j for (r, qb), j in cm.assigned_copy.items() if qb == i]
        assert len(copies) == len(set(copies))
    glue_per_qubit = {}
    for _, i, _ in cm.glue_rows:
        glue_per_qubit[i] = glue_per_qubit.get(i, 0) + 1
    for i in range(q.n):
        assert glue_per_qubit.get(i, 0) == q_x - 1


def assert_gauge_lemma(q, qg, gm):
    """Refined copied-and-gauged parameter list (per-row split counts)."""
    assert qg.k == q.k
    assert qg.w_x == min(q.w_x, 3)
    split = [r for r, rows in gm.split_rows.items() if len(rows) > 1]
    extra_qubits = sum(len(cols) for cols in gm.new_qubits.values())
    assert qg.n == q.n + extra_qubits
    assert qg.n_x == q.n_x + sum(len(q.h_x.row_support(r)) - 1 for r in split)
    assert qg.n_z == q.n_z
    assert qg.w_z <= q.w_z * max(q.q_x, 1) * (q.w_x + 1) + q.w_z
    assert qg.q_z <= max(q.q_z * max(q.w_x, 1), q.q_z)
    # splitting preserves column weights on original qubits; new columns have
    # weight 2, so q_X never rises past max(q_X, 2)
    assert qg.q_x == (q.q_x if not split else max(q.q_x, 2))
    for r, rows in gm.split_rows.items():
        acc = 0
        for nr in rows:
            acc ^= qg.h_x.rows[nr]
        mask = (1 << q.n) - 1
        assert acc & mask == q.h_x.rows[r]
        if len(rows) > 1:
            for col in gm.new_qubits[r]:
                count = sum((qg.h_x.rows[nr] >> col) & 1 for nr in rows)
                assert count == 2


def assert_thicken_lemma(q, qt, ell):
    assert qt.n == ell * q.n + q.n_x * (ell - 1)
    assert qt.k == q.k
    assert qt.n_x == ell * q.n_x
    assert qt.n_z == q.n_z * ell + (ell - 1) * q.n
    if q.n_x and ell >= 2:
        assert qt.w_x == q.w_x + (2 if ell >= 3 else 1)
        assert qt.q_x == max(q.q_x, 2)
    if ell >= 2 and q.n >= 1:
        assert qt.w_z == max(q.w_z, q.q_x + 2)


def soundness_lambda_bruteforce(parts) -> Fraction:
    """Independent soundness enumerator: scans all fillings v instead of
    solving per-cycle systems."""
    best = Fraction(1)
    for part in parts:
        m1, m0 = part.boundary_1, part.boundary_0
        n_v = m1.ncols
        best_fill: dict[int, int] = {}
        for vbits in range(1 << n_v):
            u = mat_vec(m1, vbits)
            w = vbits.bit_count()
            if u not in best_fill or w < best_fill[u]:
                best_fill[u] = w
        for u, fill in best_fill.items():
            if u == 0 or mat_vec(m0, u) != 0:
                continue
            lam = Fraction(u.bit_count(), fill)
            if lam < best:
                best = lam
    return best
