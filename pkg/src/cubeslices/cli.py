"""Command line entry point.

Example::

    cubeslices --dim 4 --mode central --emit f,u,tables --check tables
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import report
from .arrangement import count_chambers, master_arrangement, restricted_arrangement
from .classify import (
    check_central_intersection_conjecture,
    check_generic_central_edge_criterion,
    classify,
    vertex_gap_report,
)
from .colorclass import enumerate_color_classes
from .cube import AFFINE, CENTRAL, CubeSpec, orbit_reps_vertex_tuples

EMITS = ("f", "u", "s", "graphs", "histogram", "tables")
CHECKS = ("tables", "conjectures", "thm22", "colorclasses", "oeis")


@dataclass
class RunConfig:
    dim: int
    mode: str = AFFINE
    generic_only: bool = False
    max_k: int | None = None
    workers: int = 1
    out_dir: Path = Path("out")
    emit: set = field(default_factory=lambda: {"f"})
    checks: set = field(default_factory=set)

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.mode not in (AFFINE, CENTRAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        bad = (set(self.emit) - set(EMITS)) | (set(self.checks) - set(CHECKS))
        if bad:
            raise ValueError(f"unknown emit/check items: {sorted(bad)}")


class Failures(list):
    def add(self, check: str, what: str, expected, got) -> None:
        self.append({"check": check, "item": what, "expected": expected, "got": got})


def check_oeis(d_max: int, failures: Failures | None = None, log=print) -> Failures:
    failures = Failures() if failures is None else failures
    for d in range(3, min(d_max, 5) + 1):
        spec = CubeSpec(d, AFFINE)
        master = count_chambers(master_arrangement(spec))
        tup = orbit_reps_vertex_tuples(spec, 1)[0]
        one = count_chambers(restricted_arrangement(spec, tup)[0])
        exp = report.OEIS_CELLS[d]
        log(f"oeis d={d}: master={master} one-vertex={one} expected={exp}")
        if (master, one) != exp:
            failures.add("oeis", f"d={d}", list(exp), [master, one])
    return failures


def _check_tables(run, failures: Failures, log) -> None:
    d = run.spec.d
    central = run.spec.mode == CENTRAL
    total = (report.CENTRAL_TOTAL if central else report.AFFINE_TOTAL).get(d)
    generic = (report.CENTRAL_GENERIC if central else report.AFFINE_GENERIC).get(d)
    per_k = (report.CENTRAL_PER_K if central else report.AFFINE_PER_K).get(d)
    got_generic = len(run.generic_types())
    if generic is not None:
        log(f"tables generic: got {got_generic} expected {generic}")
        if got_generic != generic:
            failures.add("tables", "generic", generic, got_generic)
    if run.generic_only:
        return
    if total is not None:
        log(f"tables total: got {run.n_types} expected {total}")
        if run.n_types != total:
            failures.add("tables", "total", total, run.n_types)
    if per_k is not None and run.max_k == run.spec.ambient - 1:
        counts, new = run.per_k_counts(), run.new_counts()[1:]
        log(f"tables per-k: got {counts} {new} expected {per_k[0]} {per_k[1]}")
        if counts != per_k[0]:
            failures.add("tables", "per_k", per_k[0], counts)
        if new != per_k[1]:
            failures.add("tables", "new", per_k[1], new)


def run(config: RunConfig, log=print) -> tuple[int, Failures]:
    failures = Failures()
    spec = CubeSpec(config.dim, config.mode)
    out = Path(config.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        failures.add("io", str(out), "writable directory", str(exc))
        return 2, failures
    need_run = bool(
        {"f", "u", "s", "histogram", "tables"} & set(config.emit)
        or {"tables", "conjectures"} & set(config.checks)
    )
    res = None
    if need_run:
        res = classify(spec, config.generic_only, config.max_k, config.workers)
        log(f"d={spec.d} {spec.mode}: {res.n_types} types ({len(res.generic_types())} generic)")
    kinds = [k for k in ("f", "u", "s") if k in config.emit]
    try:
        if kinds:
            report.emit_type_files(res, out, kinds)
        if "tables" in config.emit:
            name = f"{spec.d}cube{'c' if spec.mode == CENTRAL else ''}tables.txt"
            (out / name).write_text(report.table_text(res))
        if "histogram" in config.emit:
            report.emit_histogram(res, out / f"{spec.d}cube{'c' if spec.mode == CENTRAL else ''}histogram.csv")
        if "graphs" in config.emit or "colorclasses" in config.checks:
            classes = enumerate_color_classes(spec.d)
            log(f"color classes: {len(classes)}")
            if "graphs" in config.emit:
                lines, verts = [], []
                for c in classes.values():
                    edges = " ".join(f"{a}-{b}" for a, b in c.graph.edges)
                    lines.append(f"{c.graph.n};{edges};{c.graph.color_string()}")
                    verts.append(report.s_line(c.representative.vertices))
                (out / f"{spec.d}cubeGraphs.txt").write_text("".join(x + "\n" for x in lines))
                (out / f"{spec.d}cubeGraphVerts.txt").write_text("".join(x + "\n" for x in verts))
            if "colorclasses" in config.checks:
                exp = report.COLOR_CLASSES.get(spec.d)
                if exp is not None and exp != len(classes):
                    failures.add("colorclasses", f"d={spec.d}", exp, len(classes))
    except OSError as exc:
        failures.add("io", str(out), "writable files", str(exc))
        return 2, failures
    if "tables" in config.checks:
        _check_tables(res, failures, log)
    if "conjectures" in config.checks:
        crun = res if spec.mode == CENTRAL and not config.generic_only else classify(CubeSpec(spec.d, CENTRAL))
        rep = check_central_intersection_conjecture(crun)
        log(f"intersections: {rep.pairs} holds={rep.holds} cube-at-every-k={rep.cube_at_every_k}")
        if not rep.holds:
            failures.add("conjectures", "intersections", "singleton cube type", rep.pairs)
        if not rep.cube_at_every_k:
            failures.add("conjectures", "cube construction", True, False)
        arun = res if spec.mode == AFFINE and not config.generic_only else classify(CubeSpec(spec.d, AFFINE))
        gap = vertex_gap_report(arun)
        # reported, never a failure: the predicate is known to be contradicted
        log(f"vertex counts attained={gap.attained} missing={gap.missing} power-of-two predicate={gap.predicate}")
    if "thm22" in config.checks:
        rep = check_generic_central_edge_criterion(spec.d)
        log(f"edge orbits={rep.edge_classes} types={rep.type_classes} consistent={rep.consistent}")
        if not rep.consistent:
            failures.add("thm22", f"d={spec.d}", True, False)
    if "oeis" in config.checks:
        check_oeis(spec.d, failures, log)
    return (1 if failures else 0), failures


def _csv_set(text: str) -> set:
    return {t.strip() for t in text.split(",") if t.strip()}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubeslices", description="Classify hyperplane slices of the d-cube.")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--mode", choices=(AFFINE, CENTRAL), default=AFFINE)
    p.add_argument("--generic-only", action="store_true")
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out-dir", type=Path, default=Path("out"))
    p.add_argument("--emit", type=_csv_set, default={"f"}, help="comma list of " + ",".join(EMITS))
    p.add_argument("--check", type=_csv_set, default=set(), help="comma list of " + ",".join(CHECKS))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        config = RunConfig(
            dim=args.dim,
            mode=args.mode,
            generic_only=args.generic_only,
            max_k=args.max_k,
            workers=args.workers,
            out_dir=args.out_dir,
            emit=args.emit,
            checks=args.check,
        )
    except ValueError as exc:
        print(json.dumps({"error": "usage", "detail": str(exc)}), file=sys.stderr)
        return 2
    status, failures = run(config)
    for f in failures:
        print(json.dumps(f), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
