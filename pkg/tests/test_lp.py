"""Exact LP feasibility against a Fourier-Motzkin oracle."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from cubeslices.colorclass import unrealizable_labeling
from cubeslices.cube import vertex_coords
from cubeslices.lp import ConstraintSystem, cone_relint_dimension, strict_feasible


def fm_feasible(n, eqs, strict) -> bool:
    """Is {x : E x = 0, S x > 0} nonempty?  Eliminates variables one by one."""
    eqs = [[Fraction(x) for x in e] for e in eqs]
    rows = [[Fraction(x) for x in s] for s in strict]
    # substitute equalities away
    while eqs:
        e = eqs.pop()
        j = next((i for i, x in enumerate(e) if x != 0), None)
        if j is None:
            continue
        sub = lambda r: [a - r[j] / e[j] * b for a, b in zip(r, e)]
        eqs = [sub(r) for r in eqs]
        rows = [sub(r) for r in rows]
    for j in range(n):
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        rows = [r for r in rows if r[j] == 0]
        for p in pos:
            for q in neg:
                rows.append([a * -q[j] + b * p[j] for a, b in zip(p, q)])
        if any(not any(r) for r in rows):
            return False
    return not rows


def systems():
    return st.integers(2, 3).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=1),
            st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=5),
        )
    )


@settings(max_examples=300, deadline=None)
@given(systems())
def test_feasibility_matches_fourier_motzkin(sysdata):
    n, eqs, strict = sysdata
    res = strict_feasible(ConstraintSystem(n, tuple(map(tuple, eqs)), tuple(map(tuple, strict))))
    assert bool(res) == fm_feasible(n, eqs, strict)
    if res:
        S = ConstraintSystem(n, tuple(map(tuple, eqs)), tuple(map(tuple, strict)))
        assert S.satisfied_by(res.witness)


def test_small_examples():
    assert not strict_feasible(ConstraintSystem(2, (), ((1, 0), (-1, 0))))
    res = strict_feasible(ConstraintSystem(2, (), ((1, 0), (0, 1))))
    assert res.feasible and all(x > 0 for x in res.witness)
    assert res.status == "feasible"


def test_cone_dimension():
    assert cone_relint_dimension(ConstraintSystem(3)) == 3
    assert cone_relint_dimension(ConstraintSystem(3, ((1, 1, 1),))) == 2
    assert cone_relint_dimension(ConstraintSystem(2, (), ((1, 0), (-1, 0)))) is None


def _unrealizable_system():
    eqs, strict = [], []
    for v, lab in zip(vertex_coords(3), unrealizable_labeling()):
        row = tuple(v) + (1,)
        if lab == 0:
            eqs.append(row)
        else:
            strict.append(tuple(lab * x for x in row))
    return ConstraintSystem(4, tuple(eqs), tuple(strict))


def test_unrealizable_system_infeasible():
    S = _unrealizable_system()
    assert not strict_feasible(S)
    assert cone_relint_dimension(S) is None
    assert not fm_feasible(4, S.equalities, S.strict)
