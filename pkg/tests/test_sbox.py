import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cognatebf.boolean import TruthTable
from cognatebf.constraints import ConstraintSystem
from cognatebf.errors import DimensionError, ParseError
from cognatebf.properties import classify, nonlinearity
from cognatebf.sbox import (
    SubstitutionTable,
    all_combinations_balanced,
    build_sbox,
    format_sbox,
    is_bijective,
    is_permutation,
    parse_sbox,
    sbox_nonlinearity,
    sbox_report,
)
from cognatebf.search import SearchConfig, check_component_constraints, gradient_descent_search
from oracles import combination_table, nonlinearity_brute

PRESENT = [0xC, 5, 6, 0xB, 9, 0, 0xA, 0xD, 3, 0xE, 0xF, 8, 4, 7, 1, 2]

square_tables = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=1 << n, max_size=1 << n))


def identity4():
    return build_sbox([TruthTable.variable(i, 4) for i in range(1, 5)])


def test_build_examples():
    assert identity4().table.tolist() == list(range(16))
    s = build_sbox([TruthTable([0, 0, 0, 1])])
    assert (s.table.tolist(), s.m) == ([0, 0, 0, 1], 1)
    x = [TruthTable.variable(i, 3) for i in (1, 2, 3)]
    s = build_sbox([x[0] ^ x[1], x[1] ^ x[2], x[2]])
    expected = [((v & 1) ^ (v >> 1 & 1)) | (((v >> 1 & 1) ^ (v >> 2 & 1)) << 1) | ((v >> 2 & 1) << 2)
                for v in range(8)]
    assert s.table.tolist() == expected


def test_build_errors():
    with pytest.raises(ValueError):
        build_sbox([])
    with pytest.raises(DimensionError):
        build_sbox([TruthTable.variable(1, 2), TruthTable.variable(1, 3)])
    with pytest.raises(DimensionError):
        build_sbox([TruthTable.variable(1, 1)] * 2)


def test_components_round_trip(rng):
    for n in range(1, 7):
        comps = [TruthTable.random(n, rng) for _ in range(int(rng.integers(1, n + 1)))]
        s = build_sbox(comps)
        assert list(s.components) == comps
        assert SubstitutionTable(s.table, s.m) == s


def test_nonlinearity_examples():
    assert sbox_nonlinearity(identity4()) == 0
    f = TruthTable.from_callable(4, lambda a, b, c, d: (a & b) ^ (c & d))
    assert sbox_nonlinearity(build_sbox([f])) == nonlinearity(f)
    oracle = min(nonlinearity_brute(combination_table(PRESENT, c, 4)) for c in range(1, 16))
    assert oracle == 4
    assert sbox_nonlinearity(SubstitutionTable(PRESENT, 4)) == oracle


def test_nonlinearity_bounded_by_components(rng):
    for _ in range(50):
        s = SubstitutionTable(rng.permutation(16), 4)
        assert all(sbox_nonlinearity(s) <= nonlinearity(c) for c in s.components)


def test_bijectivity_examples():
    assert is_bijective(identity4())
    table = list(range(16))
    table[3] = 2
    assert not is_bijective(SubstitutionTable(table, 4))
    with pytest.raises(DimensionError):
        is_bijective(build_sbox([TruthTable.variable(1, 3)]))


@given(square_tables, st.booleans())
@settings(max_examples=200, deadline=None)
def test_bijectivity_two_routes(table, permute):
    n = len(table).bit_length() - 1
    if permute:
        table = sorted(range(1 << n), key=lambda v: table[v] * (1 << n) + v)
    s = SubstitutionTable(table, n)
    direct = len(set(table)) == len(table)
    assert is_permutation(s) == all_combinations_balanced(s) == direct


def test_report_examples():
    r = sbox_report(identity4())
    assert (r.min_nonlinearity, r.bijective) == (0, True)
    assert len(r.combinations) == 15
    f = TruthTable.from_callable(4, lambda a, b, c, d: (a & b) ^ c)
    r = sbox_report(build_sbox([f]))
    assert r.combinations == ((1, classify(f)),) and r.bijective is None
    assert r.worst_linear_structure_count == len(classify(f).linear_structures)


def test_report_of_searched_components():
    cs = ConstraintSystem(n=4, require_balanced=True, min_nonlinearity=4)
    comps = [gradient_descent_search(cs, SearchConfig(seed=s)) for s in range(4)]
    ok, failing = check_component_constraints(comps, ConstraintSystem(min_nonlinearity=0))
    assert ok
    r = sbox_report(build_sbox(comps))
    for mask, rep in r.combinations:
        if mask & (mask - 1) == 0:
            assert rep.nonlinearity >= 4 and rep.balanced
    assert r.min_nonlinearity == min(rep.nonlinearity for _, rep in r.combinations)


def test_file_round_trip(rng):
    for n, m in [(4, 4), (5, 3), (8, 8), (3, 1)]:
        s = SubstitutionTable(rng.integers(0, 1 << m, size=1 << n), m)
        assert parse_sbox(format_sbox(s, header_lines=["a comment"])) == s


@pytest.mark.parametrize("text,line", [
    ("n=2 m=2\n0 1 2 g\n", 2),
    ("0 1 2 3\n", 1),
])
def test_file_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_sbox(text)
    assert info.value.line == line


def test_file_wrong_count():
    with pytest.raises(ParseError):
        parse_sbox("n=2 m=2\n0 1 2\n")
    with pytest.raises(ParseError):
        parse_sbox("n=2 m=1\n0 1 2 3\n")
