"""Reference numbers, table rendering and file emitters."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable

from .classify import ClassificationRun, vertex_count_distribution
from .cube import CENTRAL
from .linalg import format_vector

# Reference counts, indexed by d.
AFFINE_TOTAL = {3: 4, 4: 30, 5: 344, 6: 7346}
CENTRAL_TOTAL = {3: 2, 4: 6, 5: 23, 6: 133, 7: 1657}
AFFINE_GENERIC = {2: 1, 3: 4, 4: 12, 5: 58, 6: 554}
CENTRAL_GENERIC = {2: 1, 3: 2, 4: 3, 5: 7, 6: 21, 7: 135}
AFFINE_PER_K = {
    3: ([3, 3, 2, 2], [1, 0, 0]),
    4: ([12, 14, 14, 10, 6], [7, 6, 4, 1]),
    5: ([58, 103, 129, 105, 52, 14], [81, 96, 73, 31, 5]),
}
CENTRAL_PER_K = {
    3: ([2, 1, 1], [0, 0]),
    4: ([3, 2, 2, 2], [1, 1, 1]),
    5: ([7, 6, 6, 5, 3], [5, 5, 4, 2]),
    6: ([21, 28, 34, 30, 18, 7], [27, 33, 29, 17, 6]),
}
# master arrangement and one-vertex flat cell counts (A000609, A034997)
OEIS_CELLS = {3: (104, 32), 4: (1882, 370), 5: (94572, 11292)}
COLOR_CLASSES = {3: 12, 4: 61, 5: 484}


def file_name(d: int, kind: str, scope: str, central: bool) -> str:
    return f"{d}cube{kind}{'c' if central else ''}{scope}.txt"


def scopes(run: ClassificationRun) -> list[tuple[str, list]]:
    """(scope tag, [(entry, k or None)]) pairs: int, 1v..dv, tot."""
    entries = run.entries()
    out = [("int", [(e, 0) for e in entries if 0 in e.ks])]
    if not run.generic_only:
        for k in range(1, run.max_k + 1):
            out.append((f"{k}v", [(e, k) for e in entries if k in e.ks]))
    out.append(("tot", [(e, None) for e in entries]))
    return out


def f_line(fv) -> str:
    return "[" + ", ".join(str(x) for x in fv) + "]"


def u_line(w) -> str:
    return format_vector(w)


def s_line(vertices) -> str:
    return ";".join(format_vector(v) for v in vertices)


def emit_type_files(run: ClassificationRun, out_dir: Path, kinds: Iterable[str]) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    d = run.spec.d
    central = run.spec.mode == CENTRAL
    written = []
    for scope, items in scopes(run):
        for kind in kinds:
            lines = []
            for e, k in items:
                if kind == "f":
                    lines.append(f_line(e.f_vector))
                elif kind == "u":
                    lines.append(u_line(e.witness_for(k)))
                elif kind == "s":
                    lines.append(s_line(e.representative.vertices))
            path = out_dir / file_name(d, kind, scope, central)
            path.write_text("".join(line + "\n" for line in lines))
            written.append(path)
    return written


def histogram_csv(runs: dict[str, ClassificationRun]) -> str:
    """CSV of type counts by vertex count; runs keyed 'affine'/'central'."""
    cols = {}
    for mode in ("affine", "central"):
        run = runs.get(mode)
        if run is None:
            continue
        cols[f"{mode}_all"] = vertex_count_distribution(run)
        cols[f"{mode}_generic"] = vertex_count_distribution(run, generic=True)
    header = ["vertex_count", "affine_all", "affine_generic", "central_all", "central_generic"]
    rows = sorted({n for c in cols.values() for n in c})
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for n in rows:
        row = [n]
        for h in header[1:]:
            if h not in cols:
                row.append("")
            else:
                row.append(cols[h].get(n, 0))
        w.writerow(row)
    return buf.getvalue()


def emit_histogram(runs, path: Path | None = None) -> str:
    """Histogram CSV for one run or a {mode: run} mapping, optionally written."""
    if isinstance(runs, ClassificationRun):
        runs = {runs.spec.mode: runs}
    text = histogram_csv(runs)
    if path is not None:
        Path(path).write_text(text)
    return text


def table_text(run: ClassificationRun) -> str:
    d = run.spec.d
    lines = [f"d={d} mode={run.spec.mode} types={run.n_types} generic={len(run.generic_types())}"]
    counts = run.per_k_counts()
    new = run.new_counts()
    lines.append("per-k:  " + " & ".join(str(c) for c in counts))
    lines.append("new:    " + " ".join(f"({c})" for c in new[1:]))
    by_rank: dict[int, list[int]] = {}
    for flat, n in run.cell_counts:
        r = 0 if flat is None else flat.rank
        by_rank.setdefault(r, []).append(n)
    cells = "; ".join(
        ", ".join(str(x) for x in sorted(set(v))) for _, v in sorted(by_rank.items())
    )
    lines.append("cells:  " + cells)
    return "\n".join(lines) + "\n"


def column_marks(affine_run: ClassificationRun, central_run: ClassificationRun) -> dict:
    """Column k -> sorted list of (f-vector, central mark) for every type.

    A type is marked in column k when some central hyperplane cuts it out
    through cube vertices of affine rank k; for a central plane that rank is
    the linear rank plus one (the vertex set is symmetric), or 0.
    """
    central_cols: dict[bytes, set[int]] = {}
    for k, keys in central_run.per_k_types.items():
        col = k + 1 if k > 0 else 0
        for key in keys:
            central_cols.setdefault(key, set()).add(col)
    table: dict[int, list] = {}
    for e in affine_run.entries():
        for k in sorted(e.ks):
            table.setdefault(k, []).append((e.f_vector, k in central_cols.get(e.key, ())))
    return {k: sorted(v) for k, v in sorted(table.items())}


def render_columns(marks: dict) -> str:
    out = []
    for k, items in marks.items():
        cells = [f_line(fv) + ("c" if c else "") for fv, c in items]
        out.append(f"k={k} ({len(items)}): " + ", ".join(cells))
    return "\n".join(out) + "\n"

