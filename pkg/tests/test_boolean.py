import numpy as np
import pytest
from hypothesis import given, strategies as st

from cognatebf.boolean import (
    TruthTable,
    format_truth_table,
    inner_product_bent,
    linear_combination,
    parse_token,
    parse_truth_table,
)
from cognatebf.errors import CapacityError, DimensionError, ParseError


def tables(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n)
    ).map(TruthTable)


def test_variable_convention():
    # x1 is the least significant index bit
    assert list(TruthTable.variable(1, 2)) == [0, 1, 0, 1]
    assert list(TruthTable.variable(2, 2)) == [0, 0, 1, 1]


def test_from_callable_matches_variables():
    f = TruthTable.from_callable(3, lambda a, b, c: (a & b) ^ c)
    assert f == (TruthTable.variable(1, 3) & TruthTable.variable(2, 3)) ^ TruthTable.variable(3, 3)


def test_invalid_tables():
    with pytest.raises(DimensionError):
        TruthTable([0, 1, 1])
    with pytest.raises(DimensionError):
        TruthTable([1])
    with pytest.raises(ValueError):
        TruthTable([0, 2])
    with pytest.raises(DimensionError):
        TruthTable([0, 1, 1, 0], n=3)


def test_capacity_cap():
    with pytest.raises(CapacityError):
        TruthTable(np.zeros(1 << 21, dtype=np.uint8))


def test_immutable():
    f = TruthTable([0, 1, 1, 0])
    with pytest.raises(ValueError):
        f.bits[0] = 1


def test_hex_example():
    f = parse_truth_table("hex:6996")
    assert "".join(map(str, f)) == "0110100110010110"
    assert f == TruthTable.variable(1, 4) ^ TruthTable.variable(2, 4) ^ TruthTable.variable(3, 4) ^ TruthTable.variable(4, 4)


def test_comments_and_whitespace():
    f = parse_truth_table("# a comment\n\n  0001  \n")
    assert list(f) == [0, 0, 0, 1]


@pytest.mark.parametrize("text,line,column", [
    ("01x1", 1, 3),
    ("# c\n011", 2, 1),
    ("hex:6z96", 1, 6),
    ("0001\n0110", 2, 1),
    ("0001 0110", 1, 6),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_truth_table(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_empty_input():
    with pytest.raises(ParseError):
        parse_truth_table("# only a comment\n")


@given(tables())
def test_binary_round_trip(f):
    assert parse_token(format_truth_table(f)) == f


@given(tables(min_n=2))
def test_hex_round_trip(f):
    assert parse_token(format_truth_table(f, hex_form=True)) == f


@given(tables(max_n=7))
def test_int_round_trip(f):
    assert TruthTable.from_int(f.to_int(), f.n) == f


def test_random_balanced(rng):
    for n in range(1, 9):
        assert TruthTable.random(n, rng, balanced=True).weight == 1 << (n - 1)


def test_inner_product_bent_anf():
    f = inner_product_bent(4)
    expect = TruthTable.from_callable(4, lambda a, b, c, d: (a & b) ^ (c & d))
    assert f == expect
    with pytest.raises(DimensionError):
        inner_product_bent(3)


def test_linear_combination():
    comps = [TruthTable.variable(i, 3) for i in (1, 2, 3)]
    assert linear_combination(comps, 0b101) == comps[0] ^ comps[2]
    with pytest.raises(DimensionError):
        linear_combination([comps[0], TruthTable.variable(1, 2)], 3)


def test_complement_and_distance():
    f = TruthTable([0, 1, 1, 1])
    assert f.complement().distance(f) == 4
    assert (f ^ 1) == f.complement()
    assert f.flip(0).distance(f) == 1
