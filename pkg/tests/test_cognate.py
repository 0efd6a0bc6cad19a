from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cognatebf.boolean import TruthTable, inner_product_bent
from cognatebf.cognate import (
    INITIAL,
    WORKING,
    cognate_proximity,
    filter_ensemble,
    format_ensemble,
    initial_ensemble,
    parse_ensemble,
)
from cognatebf.constraints import ConstraintSystem
from cognatebf.errors import DimensionError, ParseError
from oracles import nonlinearity_brute

tables = st.integers(2, 6).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)).map(TruthTable)


def test_proximity_examples():
    f = TruthTable([0, 1, 1, 1])
    assert cognate_proximity(f, f).value == 0
    assert cognate_proximity(f, f.complement()).value == 1
    p = cognate_proximity(f, f.flip(2))
    assert (p.distance, p.denominator, p.value) == (1, 4, Fraction(1, 4))
    assert str(p) == "1/4"
    with pytest.raises(DimensionError):
        cognate_proximity(f, TruthTable([0, 1]))


def test_initial_ensemble_size_and_order():
    f = inner_product_bent(4)
    e = initial_ensemble(f)
    assert e.stage == INITIAL and len(e) == 32
    assert e.members[0] == f.flip(0)
    assert e.members[1] == f.flip(0).complement()
    assert e.origins[:3] == ((0, False), (0, True), (1, False))
    assert cognate_proximity(f, e.members[0]).value == Fraction(1, 16)


def test_n1_formal_ensemble():
    # only three functions differ from the nominal when n = 1
    e = initial_ensemble(TruthTable([0, 0]))
    assert len(e) == 4
    assert len(set(e.members)) == 2


@given(tables)
@settings(max_examples=60, deadline=None)
def test_ensemble_invariants(f):
    e = initial_ensemble(f)
    assert len(e) == 2 << f.n
    assert len(set(e.members)) == len(e)
    assert f not in e.members
    for g in e.members:
        near = min(cognate_proximity(g, f).value, cognate_proximity(g, f.complement()).value)
        assert near == Fraction(1, 1 << f.n)
    assert initial_ensemble(TruthTable(f.bits.copy())).members == e.members


def test_filter_vacuous_keeps_all():
    e = initial_ensemble(TruthTable([0, 1, 1, 0, 1, 0, 0, 0]))
    w = filter_ensemble(e, ConstraintSystem())
    assert w.stage == WORKING and w.members == e.members
    assert len(w.reports) == len(w)


def test_filter_impossible_is_empty_with_diagnostics():
    n = 3
    e = initial_ensemble(TruthTable([0, 1, 1, 0, 1, 0, 0, 0]))
    w = filter_ensemble(e, ConstraintSystem(min_nonlinearity=1 << (n - 1)))
    assert len(w) == 0
    assert len(w.rejected) == len(e)
    assert all(r.binding.constraint == "min_nonlinearity" for r in w.rejected)
    assert len(w.diagnostics()) == len(e)


def test_filter_bent_nominal_counts():
    f = inner_product_bent(4)
    e = initial_ensemble(f)
    # derived by brute-force affine distance over all 32 members
    oracle = [nonlinearity_brute(list(g)) for g in e.members]
    assert sum(v >= 4 for v in oracle) == 32
    assert len(filter_ensemble(e, ConstraintSystem(min_nonlinearity=4))) == 32
    assert len(filter_ensemble(e, ConstraintSystem(min_nonlinearity=6))) == sum(v >= 6 for v in oracle) == 0
    # no single flip of a weight-6 bent function is balanced
    assert len(filter_ensemble(e, ConstraintSystem(require_balanced=True))) == 0
    w = filter_ensemble(e, ConstraintSystem(min_nonlinearity=4))
    assert w.nominal_passes is True


def test_filter_preserves_order_and_is_idempotent(rng):
    f = TruthTable.random(5, rng)
    e = initial_ensemble(f)
    cs = ConstraintSystem(min_nonlinearity=8, max_absolute_indicator=24)
    w = filter_ensemble(e, cs)
    positions = [e.members.index(g) for g in w.members]
    assert positions == sorted(positions)
    again = filter_ensemble(w, cs)
    assert again.members == w.members
    assert filter_ensemble(e, cs, workers=4).members == w.members


def test_filter_dimension_mismatch():
    with pytest.raises(DimensionError):
        filter_ensemble(initial_ensemble(TruthTable([0, 1, 1, 0])), ConstraintSystem(n=3))


def test_export_round_trip():
    f = inner_product_bent(4)
    w = filter_ensemble(initial_ensemble(f), ConstraintSystem(min_nonlinearity=4))
    text = format_ensemble(w, header_lines=["kept 32 of 32"])
    lines = text.splitlines()
    assert lines[0] == "# nominal: 0001000100011110"
    assert lines[2].endswith("# C_gn=1/16 pass=true")
    nominal, rows = parse_ensemble(text)
    assert nominal == f
    assert [g for g, _ in rows] == list(w.members)
    assert all(flag is True for _, flag in rows)


def test_export_with_rejected():
    f = inner_product_bent(4)
    w = filter_ensemble(initial_ensemble(f), ConstraintSystem(require_balanced=True))
    _, rows = parse_ensemble(format_ensemble(w, include_rejected=True))
    assert len(rows) == 32 and not any(flag for _, flag in rows)


def test_export_requires_nominal():
    with pytest.raises(ParseError):
        parse_ensemble("0001  # C_gn=1/4 pass=true\n")
