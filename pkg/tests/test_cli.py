from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from cubeslices import report
from cubeslices.cli import RunConfig, check_oeis, main, run
from cubeslices.combtype import canonical_key
from cubeslices.cube import AFFINE, CENTRAL
from cubeslices.linalg import parse_vector
from cubeslices.slices import Hyperplane, build_slice

from conftest import cached_run

quiet = lambda *a, **k: None


def test_emit_f_d3(tmp_path):
    status, failures = run(RunConfig(3, AFFINE, out_dir=tmp_path, emit={"f"}), log=quiet)
    assert status == 0 and not failures
    lines = (tmp_path / "3cubeftot.txt").read_text().splitlines()
    assert lines == ["[3, 3]", "[4, 4]", "[5, 5]", "[6, 6]"]
    for scope in ("int", "1v", "2v", "3v"):
        assert (tmp_path / f"3cubef{scope}.txt").exists()


def test_central_tables_check(tmp_path):
    status, failures = run(RunConfig(4, CENTRAL, out_dir=tmp_path, emit=set(), checks={"tables"}), log=quiet)
    assert status == 0, failures
    assert (tmp_path / "4cubecftot.txt").exists() is False


def test_colorclasses_check(tmp_path):
    status, _ = run(RunConfig(3, out_dir=tmp_path, emit={"graphs"}, checks={"colorclasses"}), log=quiet)
    assert status == 0
    lines = (tmp_path / "3cubeGraphs.txt").read_text().splitlines()
    assert len(lines) == 12
    n, edges, colors = lines[0].split(";")
    assert len(colors) == int(n)
    assert all("-" in e for e in edges.split())
    assert len((tmp_path / "3cubeGraphVerts.txt").read_text().splitlines()) == 12


def test_check_failure_is_reported(tmp_path, capsys):
    # the reference d=3 per-k row lists 3 generic types; 4 are realizable
    code = main(["--dim", "3", "--out-dir", str(tmp_path), "--emit", "f", "--check", "tables"])
    assert code == 1
    err = [json.loads(x) for x in capsys.readouterr().err.splitlines()]
    assert err and err[0]["check"] == "tables" and err[0]["item"] == "per_k"


@pytest.mark.parametrize("argv", [
    ["--dim", "1"],
    ["--dim", "3", "--emit", "bogus"],
    ["--dim", "3", "--workers", "0"],
    ["--mode", "affine"],
])
def test_usage_errors(argv, tmp_path):
    assert main(argv + ["--out-dir", str(tmp_path)]) == 2


def test_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["--dim", "3", "--out-dir", str(blocker)]) == 2


def test_u_files_reproduce_registered_types(tmp_path):
    for mode in (AFFINE, CENTRAL):
        run(RunConfig(4, mode, out_dir=tmp_path, emit={"u", "s"}), log=quiet)
        res = cached_run(4, mode)
        keys = res.registry.keys()
        c = "c" if mode == CENTRAL else ""
        for scope, k in [("int", 0), ("1v", 1), ("2v", 2), ("3v", 3), ("tot", None)]:
            for line in (tmp_path / f"4cubeu{c}{scope}.txt").read_text().splitlines():
                u = parse_vector(line)
                H = Hyperplane.from_ambient(u, mode)
                S = build_slice(4, H, mode)
                assert canonical_key(S) in keys
                if k is not None:
                    assert S.k == k
        s_lines = (tmp_path / f"4cubes{c}tot.txt").read_text().splitlines()
        assert len(s_lines) == res.n_types
        assert all(len(parse_vector(v)) == 4 for v in s_lines[0].split(";"))


def _snapshot(path):
    return {p.name: p.read_bytes() for p in sorted(path.iterdir())}


def test_outputs_byte_identical_across_workers(tmp_path):
    emit = {"f", "u", "s", "tables", "histogram"}
    outs = []
    for i, workers in enumerate((1, 2, 1)):
        d = tmp_path / str(i)
        run(RunConfig(4, AFFINE, workers=workers, out_dir=d, emit=emit), log=quiet)
        outs.append(_snapshot(d))
    assert outs[0] == outs[1] == outs[2]
    assert len(outs[0]) == 6 * 3 + 2


def _hist(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_histograms():
    rows = _hist(report.emit_histogram(cached_run(3, AFFINE)))
    assert len(rows) == 4 and all(r["affine_all"] == "1" for r in rows)
    assert all(r["central_all"] == "" for r in rows)
    text = report.emit_histogram({"affine": cached_run(4, AFFINE), "central": cached_run(4, CENTRAL)})
    assert text.splitlines()[0] == "vertex_count,affine_all,affine_generic,central_all,central_generic"
    rows = _hist(text)
    assert int(rows[-1]["vertex_count"]) == 12
    assert sum(int(r["central_all"]) for r in rows) == 6
    assert sum(int(r["central_generic"]) for r in rows) == 3
    assert [int(r["vertex_count"]) for r in rows] == sorted(int(r["vertex_count"]) for r in rows)


def test_check_oeis():
    assert check_oeis(4, log=quiet) == []


def test_table_text():
    text = report.table_text(cached_run(4, CENTRAL))
    assert "per-k:  3 & 2 & 2 & 2" in text
    assert "new:    (1) (1) (1)" in text


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "cubeslices", "--dim", "3", "--out-dir", str(tmp_path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert "4 types" in proc.stdout
