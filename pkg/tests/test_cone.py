from fractions import Fraction

import pytest

from qwr.codes import CssCode, css_distance, ring_face_code, steane_code
from qwr.cone import (
    build_cone_parts,
    cellulate,
    cone_code,
    soundness_lambda,
    thicken_cone,
    thicken_cone_detail,
)
from qwr.f2la import BinMatrix, mat_mul, rank

from helpers import corpus, soundness_lambda_bruteforce


def hexagon_parts():
    r = ring_face_code(6)
    parts, f, retained = build_cone_parts(r)
    return r, parts, f, retained


class TestBuildParts:
    def test_below_threshold_noop(self):
        q = steane_code()
        parts, f, retained = build_cone_parts(q)
        assert not parts
        assert retained == [0, 1, 2]
        assert cone_code(q, parts, f) == q

    def test_hexagon_face(self):
        r, parts, f, retained = hexagon_parts()
        assert len(parts) == 1 and retained == []
        part = parts[0]
        assert len(part.one_cells) == 6
        assert all(xr is not None for xr, _, _ in part.zero_cells)
        for t, (_, qa, qb) in enumerate(part.zero_cells):
            assert qa != qb

    def test_minus_cells_match_homology(self):
        _, parts, _, _ = hexagon_parts()
        part = parts[0]
        pre_h0 = part.boundary_1.nrows - rank(part.boundary_1)
        assert len(part.minus_one_cells) == pre_h0

    def test_composition_vanishes(self):
        _, parts, _, _ = hexagon_parts()
        for part in parts:
            assert mat_mul(part.boundary_0, part.boundary_1).is_zero()

    def test_h0_trivial_after_augmentation(self):
        _, parts, _, _ = hexagon_parts()
        for part in parts:
            n_edges = len(part.zero_cells)
            assert n_edges - rank(part.boundary_0) == rank(part.boundary_1)

    def test_disconnected_kept_direct(self):
        # two triangles sharing no vertex under one weight-6 Z row
        x_rows = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        hx = BinMatrix.from_support(x_rows, 6)
        hz = BinMatrix.from_support([range(6)], 6)
        q = CssCode(hx, hz)
        parts, f, retained = build_cone_parts(q)
        assert not parts and retained == [0]
        assert f.skipped_rows == (0,)
        with pytest.raises(ValueError, match="disconnected"):
            build_cone_parts(q, on_disconnected="error")

    def test_threshold_parameter(self):
        r = ring_face_code(6)
        parts, _, retained = build_cone_parts(r, weight_threshold=6)
        assert not parts and retained == [0]

    def test_alternative_pairing_strategy(self):
        # outermost-inward pairing changes the part graphs but must still
        # produce a valid, k-preserving cone
        def outer_pairing(incident):
            out = []
            lo, hi = 0, len(incident) - 1
            while lo < hi:
                out.append((incident[lo], incident[hi]))
                lo += 1
                hi -= 1
            return out

        q = steane_code()  # at threshold 3 each Z row shares 4 qubits with one X row
        default_parts, f, _ = build_cone_parts(q, weight_threshold=3)
        outer_parts, f2, _ = build_cone_parts(q, weight_threshold=3, pairing=outer_pairing)
        assert default_parts and outer_parts != default_parts
        for parts, fmap in ((default_parts, f), (outer_parts, f2)):
            qcone = cone_code(q, cellulate(parts), fmap)
            assert qcone.k == q.k


class TestConeCode:
    def test_hexagon_cone(self):
        r, parts, f, _ = hexagon_parts()
        qc = cone_code(r, parts, f)
        assert qc.k == r.k
        assert qc.n == r.n + len(parts[0].zero_cells)
        assert qc.n_z == 6
        assert qc.w_z <= r.q_x + 1

    def test_k_preserved_on_corpus(self):
        for q in corpus(31, 30):
            parts, f, _ = build_cone_parts(q)
            qc = cone_code(q, parts, f)
            assert qc.k == q.k
            rparts = cellulate(parts)
            qr = cone_code(q, rparts, f)
            assert qr.k == q.k

    def test_chain_map_validated(self):
        r, parts, f, _ = hexagon_parts()
        broken = parts[0].zero_cells[:-1] + ((2, parts[0].zero_cells[-1][1], parts[0].zero_cells[-1][2]),)
        from qwr.cone import ConeComplexPart, _part_boundaries

        b1, b0 = _part_boundaries(parts[0].one_cells, broken, parts[0].minus_one_cells)
        bad = ConeComplexPart(parts[0].parent_z_row, parts[0].one_cells, broken,
                              parts[0].minus_one_cells, b1, b0)
        with pytest.raises(ValueError, match="chain-map"):
            cone_code(r, (bad,), f)


class TestCellulate:
    def test_short_cycles_untouched(self):
        r = ring_face_code(4)
        parts, f, _ = build_cone_parts(r, weight_threshold=3)
        assert cellulate(parts) == parts

    def test_hexagon_split(self):
        _, parts, _, _ = hexagon_parts()
        cparts = cellulate(parts)
        part = cparts[0]
        assert all(len(c) <= 4 for c in part.minus_one_cells)
        assert mat_mul(part.boundary_0, part.boundary_1).is_zero()
        # homology unchanged: H0 still trivial, cycle ranks consistent
        assert len(part.zero_cells) - rank(part.boundary_0) == rank(part.boundary_1)

    def test_octagon_split(self):
        r = ring_face_code(8)
        parts, f, _ = build_cone_parts(r)
        cparts = cellulate(parts)
        part = cparts[0]
        assert all(len(c) <= 4 for c in part.minus_one_cells)
        qc = cone_code(r, cparts, f)
        assert qc.k == r.k and qc.w_x <= 4

    def test_chords_map_to_zero(self):
        _, parts, _, _ = hexagon_parts()
        cparts = cellulate(parts)
        chords = [t for t in cparts[0].zero_cells if t[0] is None]
        assert chords  # a 6-cycle needs at least one chord


class TestThickenCone:
    def test_length_one_noop(self):
        r, parts, f, _ = hexagon_parts()
        qc = cone_code(r, cellulate(parts), f)
        assert thicken_cone(qc, 1) == qc

    def test_dual_thickening_multiplies_z(self):
        r, parts, f, _ = hexagon_parts()
        qc = cone_code(r, cellulate(parts), f)
        qt = thicken_cone(qc, 2)
        assert qt.k == qc.k
        assert css_distance(qt, "Z") == 2 * css_distance(qc, "Z")
        assert css_distance(qt, "X") == css_distance(qc, "X")

    def test_region_a_qx_bounded(self):
        # height-chosen rows plus at most two repetition checks per column
        r, parts, f, _ = hexagon_parts()
        qc = cone_code(r, cellulate(parts), f)
        for ell in (2, 3):
            qt, bm, hr = thicken_cone_detail(qc, ell)
            cols = qt.h_x.col_weights()
            for qb in range(qc.n):
                for col in range(ell):
                    assert cols[qb * ell + col] <= hr.achieved_max + 2


class TestSoundness:
    def test_singleton_ratio(self):
        # a 3-cycle filled only by single vertices: lambda = min(1, |u|/|v|)
        r = ring_face_code(3, dangler_vertices=(0, 1))
        parts, f, _ = build_cone_parts(r, weight_threshold=2)
        lam = soundness_lambda(parts)
        assert lam == soundness_lambda_bruteforce(parts)

    def test_empty_parts(self):
        assert soundness_lambda(()) == Fraction(1)

    def test_matches_bruteforce(self):
        for ring in (4, 5, 6, 7, 8):
            r = ring_face_code(ring)
            parts, f, _ = build_cone_parts(r, weight_threshold=3)
            cparts = cellulate(parts)
            assert soundness_lambda(parts) == soundness_lambda_bruteforce(parts)
            assert soundness_lambda(cparts) == soundness_lambda_bruteforce(cparts)

    def test_in_unit_interval(self):
        for q in corpus(37, 20):
            parts, f, _ = build_cone_parts(q)
            if any(len(p.one_cells) > 16 for p in parts):
                continue
            lam = soundness_lambda(cellulate(parts))
            assert 0 < lam <= 1


class TestReducedConeDistanceBound:
    @pytest.mark.parametrize("ring", [6, 7, 8])
    def test_z_distance_bound(self, ring):
        r = ring_face_code(ring)
        d_z = css_distance(r, "Z")
        parts, f, _ = build_cone_parts(r)
        cparts = cellulate(parts)
        qc = cone_code(r, cparts, f)
        lam = soundness_lambda(cparts)
        ell = 2
        qt = thicken_cone(qc, ell)
        assert css_distance(qt, "Z") >= d_z * ell * lam
        assert css_distance(qt, "X") >= css_distance(r, "X")
