from __future__ import annotations

import os
import time
from functools import lru_cache

import pytest

from cubeslices.classify import classify
from cubeslices.colorclass import enumerate_color_classes
from cubeslices.cube import CubeSpec

STRETCH = os.environ.get("CUBESLICES_STRETCH", "1") != "0"

# acceptance lines, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


_RUNS: dict = {}


def timed_run(d: int, mode: str, generic_only: bool = False):
    """Fresh run with its wall time; the result also feeds the cache."""
    t0 = time.perf_counter()
    run = classify(CubeSpec(d, mode), generic_only=generic_only)
    elapsed = time.perf_counter() - t0
    _RUNS.setdefault((d, mode, generic_only), run)
    return run, elapsed


def cached_run(d: int, mode: str, generic_only: bool = False):
    key = (d, mode, generic_only)
    if key not in _RUNS:
        timed_run(d, mode, generic_only)
    return _RUNS[key]


@lru_cache(maxsize=None)
def cached_color_classes(d: int):
    return enumerate_color_classes(d)


def pytest_collection_modifyitems(config, items):
    if STRETCH:
        return
    skip = pytest.mark.skip(reason="stretch tier disabled (CUBESLICES_STRETCH=0)")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
