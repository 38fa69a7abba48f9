"""Command-line surface: parse codes, run transform pipelines, build
schedules, compute exact and effective distances, emit JSON reports.

Matrix files use the `mtxf2` text format: a "rows cols" header line, then
one line per row listing the 1-based column indices of its ones (a blank
line is a zero row).  An alist importer is provided as a thin adapter.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .codes import INF, CapExceeded, CssCode, ClassicalCode, css_distance
from .cone import build_cone_parts, cellulate, cone_code, thicken_cone_detail
from .f2la import BinMatrix, bit_indices
from .faultdist import DEFAULT_MAX_D, effective_distance, hook_weight_audit
from .reduce import (
    balance_x,
    balance_z,
    choose_heights,
    copy_code,
    gauge_code,
    greedy_heights,
    kept_z_rows,
    thicken,
)
from .schedule import (
    Schedule,
    balanced_schedule,
    baseline_schedule,
    cone_schedule,
    copied_schedule,
    dual_schedule,
    format_schedule,
    gauged_schedule,
    parse_schedule,
    prune_z_steps,
)

REPORT_SCHEMA = 1


class UsageError(Exception):
    pass


def parse_matrix_file(path: str) -> BinMatrix:
    """Read an mtxf2 matrix; malformed lines and bad indices name their line."""
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"{path}: line 1: header must be 'rows cols'")
    try:
        nrows, ncols = int(head[0]), int(head[1])
    except ValueError as e:
        raise ValueError(f"{path}: line 1: {e}") from e
    if nrows < 0 or ncols < 0:
        raise ValueError(f"{path}: line 1: negative dimensions")
    if len(lines) - 1 < nrows:
        raise ValueError(f"{path}: expected {nrows} row lines, found {len(lines) - 1}")
    rows = []
    for ln in range(1, nrows + 1):
        v = 0
        for tok in lines[ln].split():
            try:
                j = int(tok)
            except ValueError as e:
                raise ValueError(f"{path}: line {ln + 1}: {e}") from e
            if not 1 <= j <= ncols:
                raise ValueError(f"{path}: line {ln + 1}: column index {j} out of range 1..{ncols}")
            v ^= 1 << (j - 1)
        rows.append(v)
    return BinMatrix(rows, ncols)


def write_matrix_file(path: str, m: BinMatrix) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_matrix(m))


def format_matrix(m: BinMatrix) -> str:
    lines = [f"{m.nrows} {m.ncols}"]
    for i in range(m.nrows):
        lines.append(" ".join(str(j + 1) for j in m.row_support(i)))
    return "\n".join(lines) + "\n"


def parse_alist_file(path: str) -> BinMatrix:
    """Read an alist parity check matrix (checks as rows).

    Line-based, so both zero-padded and reduced alist writers parse.
    """
    with open(path, "r", encoding="utf-8") as f:
        lines = [ln for ln in f.read().splitlines() if ln.strip()]
    if len(lines) < 4:
        raise ValueError(f"{path}: truncated alist file")
    n, m = (int(t) for t in lines[0].split()[:2])
    if len(lines) < 4 + n:
        raise ValueError(f"{path}: expected {n} column lines")
    rows = [0] * m
    for j in range(n):
        for tok in lines[4 + j].split():
            i = int(tok)
            if i == 0:
                continue  # padding
            if not 1 <= i <= m:
                raise ValueError(f"{path}: check index {i} out of range 1..{m}")
            rows[i - 1] |= 1 << j
    return BinMatrix(rows, n)


def load_matrix(path: str) -> BinMatrix:
    if path.endswith(".alist"):
        return parse_alist_file(path)
    return parse_matrix_file(path)


@dataclass
class PipelineConfig:
    hx_path: str
    hz_path: str
    transforms: list[str] = field(default_factory=list)
    ell: int = 2
    heights: str | None = None  # "greedy:<w>" | "explicit:<csv>"
    classical_path: str | None = None
    cone_threshold: int = 5
    cone_ell: int = 1
    schedule: str | None = None  # "seed:<n>" | "file:<path>" | "derived"
    basis: str = "both"
    max_d: int | None = None
    seed: int = 0
    out: str | None = None
    out_prefix: str | None = None
    threads: int = 0


def _digest(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()


def _code_params(q: CssCode) -> dict:
    return {
        "n": q.n, "k": q.k, "n_x": q.n_x, "n_z": q.n_z,
        "w_x": q.w_x, "w_z": q.w_z, "q_x": q.q_x, "q_z": q.q_z,
    }


def _dist_value(v) -> int | str:
    return "inf" if v == INF else int(v)


def _worker_count() -> int:
    raw = os.environ.get("QWR_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"QWR_THREADS must be an integer, got {raw!r}")
    return n if n > 0 else (os.cpu_count() or 1)


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Apply the configured transforms, derive schedules, compute distances."""
    t0 = time.monotonic()
    timing = {}
    hx = load_matrix(cfg.hx_path)
    hz = load_matrix(cfg.hz_path)
    code = CssCode(hx, hz)
    timing["parse"] = time.monotonic() - t0

    schedule = None
    schedule_mode = cfg.schedule
    if schedule_mode:
        if schedule_mode.startswith("seed:"):
            schedule = baseline_schedule(code, int(schedule_mode.split(":", 1)[1]))
        elif schedule_mode.startswith("file:"):
            with open(schedule_mode.split(":", 1)[1], "r", encoding="utf-8") as f:
                schedule = parse_schedule(f.read())
        elif schedule_mode == "derived":
            schedule = baseline_schedule(code, cfg.seed)
        else:
            raise UsageError(f"bad --schedule value {schedule_mode!r}")
        schedule.validate(code)

    t1 = time.monotonic()
    provenance = []
    ctx: dict = {}
    for name in cfg.transforms:
        code, schedule, note = _apply_transform(name, code, schedule, cfg, ctx)
        if schedule is not None:
            schedule.validate(code)
        note["params"] = _code_params(code)
        provenance.append(note)
    timing["transform"] = time.monotonic() - t1

    bases = ["X", "Z"] if cfg.basis == "both" else [cfg.basis]
    t2 = time.monotonic()
    distances = _compute_distances(code, schedule, bases, cfg)
    timing["distance"] = time.monotonic() - t2
    timing["total"] = time.monotonic() - t0

    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "inputs": {
            "hx": {"path": cfg.hx_path, "sha256": _digest(cfg.hx_path)},
            "hz": {"path": cfg.hz_path, "sha256": _digest(cfg.hz_path)},
        },
        "seed": cfg.seed,
        "code": _code_params(code),
        "transforms": provenance,
        "distances": distances,
        "timing_s": {k: round(v, 6) for k, v in timing.items()},
    }
    if schedule is not None:
        report["schedule_steps"] = len(schedule.steps)
    if cfg.out_prefix:
        write_matrix_file(cfg.out_prefix + ".hx.mtxf2", code.h_x)
        write_matrix_file(cfg.out_prefix + ".hz.mtxf2", code.h_z)
        if schedule is not None:
            with open(cfg.out_prefix + ".schedule", "w", encoding="utf-8") as f:
                f.write(format_schedule(schedule))
        report["outputs"] = {
            "hx": cfg.out_prefix + ".hx.mtxf2",
            "hz": cfg.out_prefix + ".hz.mtxf2",
        }
    return report


def _apply_transform(name: str, code: CssCode, schedule: Schedule | None, cfg: PipelineConfig, ctx: dict):
    note: dict = {"transform": name}
    if name == "copy":
        new, cm = copy_code(code)
        if schedule is not None:
            schedule = copied_schedule(schedule, cm)
        note["glue_rows"] = len(cm.glue_rows)
        ctx["copy_map"] = cm
        return new, schedule, note
    if name == "gauge":
        new, gm = gauge_code(code)
        if schedule is not None:
            schedule = gauged_schedule(schedule, gm, ctx.get("copy_map"))
        note["split_rows"] = sum(1 for rows in gm.split_rows.values() if len(rows) > 1)
        return new, schedule, note
    if name == "thicken":
        new, bm = thicken(code, cfg.ell)
        if schedule is not None:
            schedule = balanced_schedule(schedule, bm)
        note["ell"] = cfg.ell
        if cfg.heights:
            heights = _resolve_heights(cfg.heights, new, bm)
            new = choose_heights(new, bm, heights)
            if schedule is not None:
                schedule = prune_z_steps(schedule, set(kept_z_rows(bm, heights)))
            note["heights"] = heights
        return new, schedule, note
    if name in ("balance_x", "balance_z"):
        if not cfg.classical_path:
            raise UsageError(f"{name} needs --classical <file>")
        c = ClassicalCode(load_matrix(cfg.classical_path))
        new, bm = (balance_x if name == "balance_x" else balance_z)(code, c)
        if schedule is not None:
            schedule = balanced_schedule(schedule, bm)
        note["classical"] = {"n": c.n, "k": c.k}
        return new, schedule, note
    if name == "cone":
        parts, fmap, retained = build_cone_parts(code, cfg.cone_threshold)
        parts = cellulate(parts)
        new = cone_code(code, parts, fmap)
        if schedule is not None:
            schedule = cone_schedule(schedule, parts, fmap)
        note["coned_rows"] = len(parts)
        note["kept_direct"] = list(fmap.skipped_rows)
        note["cycle_basis"] = fmap.cycle_basis
        if cfg.cone_ell > 1:
            thickened, bm, hr = thicken_cone_detail(new, cfg.cone_ell)
            if schedule is not None:
                inner = balanced_schedule(dual_schedule(schedule), bm)
                inner = prune_z_steps(inner, set(kept_z_rows(bm, hr.heights)))
                schedule = dual_schedule(inner)
            new = thickened
            note["cone_ell"] = cfg.cone_ell
        return new, schedule, note
    raise UsageError(f"unknown transform {name!r}")


def _resolve_heights(spec: str, q_thick: CssCode, bm) -> list[int]:
    if spec.startswith("greedy:"):
        result = greedy_heights(q_thick, bm, int(spec.split(":", 1)[1]))
        return result.heights
    if spec.startswith("explicit:"):
        return [int(t) for t in spec.split(":", 1)[1].split(",")]
    raise UsageError(f"bad --heights value {spec!r}")


def _compute_distances(code: CssCode, schedule: Schedule | None, bases, cfg: PipelineConfig) -> dict:
    tasks = {}
    for b in bases:
        tasks[f"code_{b}"] = (_code_distance_entry, code, b)
        if schedule is not None and cfg.max_d is not None:
            tasks[f"effective_{b}"] = (_effective_entry, code, schedule, b, cfg.max_d)
    results = {}
    workers = _worker_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {key: pool.submit(fn, *args) for key, (fn, *args) in sorted(tasks.items())}
        for key in sorted(futures):
            results[key] = futures[key].result()
    return results


def _code_distance_entry(code: CssCode, basis: str) -> dict:
    try:
        d = css_distance(code, basis)
        method = "exhaustive" if code.k + (code.rank_x if basis == "X" else code.rank_z) <= 26 else "mitm"
        return {"value": _dist_value(d), "method": method, "bound": None}
    except CapExceeded as e:
        return {"value": None, "method": "skipped", "bound": str(e)}


def _effective_entry(code: CssCode, schedule: Schedule, basis: str, max_d: int) -> dict:
    res = effective_distance(code, schedule, basis, max_d)
    audit = hook_weight_audit(code, schedule)
    entry = {
        "value": _dist_value(res.distance),
        "method": "mitm",
        "bound": res.exact_up_to,
        "hook_audit_ok": audit.ok,
    }
    if res.witness is not None:
        entry["witness"] = [
            {
                "kind": g.kind,
                "basis": g.basis,
                "qubit": None if g.qubit is None else g.qubit + 1,
                "step": None if g.step is None else g.step + 1,
                "cut": g.cut,
                "residual": [j + 1 for j in sorted(bit_indices(g.residual))],
            }
            for g in res.witness
        ]
    return entry


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwr", description=__doc__, exit_on_error=False)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--hx", required=True, help="X check matrix (mtxf2 or .alist)")
        sp.add_argument("--hz", required=True, help="Z check matrix (mtxf2 or .alist)")
        sp.add_argument("--transform", help="comma-separated transform list")
        sp.add_argument("--ell", type=int, default=2, help="thickening length")
        sp.add_argument("--heights", help="greedy:<w> or explicit:<csv>")
        sp.add_argument("--classical", help="classical check matrix for balancing")
        sp.add_argument("--cone-threshold", type=int, default=5)
        sp.add_argument("--cone-ell", type=int, default=1)
        sp.add_argument("--schedule", help="seed:<n> | file:<path> | derived")
        sp.add_argument("--basis", choices=["X", "Z", "both"], default="both")
        sp.add_argument("--max-d", type=int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--out-prefix", help="write transformed matrices/schedule files")

    info = sub.add_parser("info", help="code parameters and exact distances")
    common(info)
    tr = sub.add_parser("transform", help="apply a transform pipeline")
    tr.add_argument("names", nargs="+", help="copy gauge thicken balance_x balance_z cone")
    common(tr)
    fd = sub.add_parser("faultdist", help="effective distance under a schedule")
    common(fd)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    transforms = list(getattr(args, "names", []))
    if args.transform:
        transforms += [t for t in args.transform.split(",") if t]
    cfg = PipelineConfig(
        hx_path=args.hx,
        hz_path=args.hz,
        transforms=transforms,
        ell=args.ell,
        heights=args.heights,
        classical_path=args.classical,
        cone_threshold=args.cone_threshold,
        cone_ell=args.cone_ell,
        schedule=args.schedule,
        basis=args.basis,
        max_d=args.max_d,
        seed=args.seed,
        out=args.out,
        out_prefix=args.out_prefix,
    )
    if args.command == "faultdist":
        if cfg.schedule is None:
            cfg.schedule = f"seed:{cfg.seed}"
        if cfg.max_d is None:
            cfg.max_d = DEFAULT_MAX_D
    try:
        report = run_pipeline(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except (ValueError, CapExceeded) as e:
        print(f"audit failure: {e}", file=sys.stderr)
        return 2
    _emit(report, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
