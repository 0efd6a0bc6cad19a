import numpy as np
import pytest

from cognatebf.boolean import TruthTable, linear_combination
from cognatebf.constraints import ConstraintSystem, evaluate_constraints
from cognatebf.errors import DimensionError, SearchFailure
from cognatebf.properties import classify
from cognatebf.search import (
    SearchConfig,
    check_component_constraints,
    constrained_search,
    gradient_descent_search,
    incremental_walsh_update,
    parse_sampling,
    restart_rng,
)
from cognatebf.spectra import walsh_spectrum
from oracles import combination_table, nonlinearity_brute

BALANCED_24 = ConstraintSystem(n=6, require_balanced=True, min_nonlinearity=24, max_absolute_indicator=32)


def test_incremental_examples():
    w = walsh_spectrum(TruthTable.constant(2))
    assert incremental_walsh_update(w, 3).tolist() == [2, 2, 2, -2]
    assert incremental_walsh_update(incremental_walsh_update(w, 1), 1) == w


def test_incremental_matches_full_transform(rng):
    for n in range(3, 11):
        for _ in range(125):
            f = TruthTable.random(n, rng)
            x = int(rng.integers(0, 1 << n))
            assert incremental_walsh_update(walsh_spectrum(f), x) == walsh_spectrum(f.flip(x))


def test_incremental_index_range():
    with pytest.raises(DimensionError):
        incremental_walsh_update(walsh_spectrum(TruthTable.constant(2)), 4)


def test_vacuous_returns_initial_table():
    cfg = SearchConfig(seed=11)
    f = gradient_descent_search(ConstraintSystem(n=4, min_nonlinearity=0), cfg)
    expected = TruthTable.random(4, restart_rng(11, 0))
    assert f == expected


def test_balanced_target_succeeds():
    result = constrained_search(BALANCED_24, SearchConfig(seed=3))
    assert evaluate_constraints(result.function, BALANCED_24)[0]
    assert result.report == classify(result.function)
    assert result.function.weight == 32


def test_infeasible_target_fails_with_best():
    cfg = SearchConfig(seed=0, max_restarts=3)
    with pytest.raises(SearchFailure) as info:
        gradient_descent_search(ConstraintSystem(n=6, min_nonlinearity=29), cfg)
    best = info.value.best
    assert best is not None and info.value.report == classify(best)
    assert info.value.report.nonlinearity <= 28


def test_reproducible():
    cs = ConstraintSystem(n=7, min_nonlinearity=52)
    a = gradient_descent_search(cs, SearchConfig(seed=99))
    b = gradient_descent_search(cs, SearchConfig(seed=99))
    assert a == b
    c = gradient_descent_search(cs, SearchConfig(seed=100))
    assert evaluate_constraints(c, cs)[0]


def test_parallel_matches_serial():
    cs = ConstraintSystem(n=6, require_balanced=True, min_nonlinearity=26, max_absolute_indicator=16)
    cfg = SearchConfig(seed=5, max_restarts=30)
    try:
        serial = constrained_search(cs, cfg)
    except SearchFailure as exc:
        with pytest.raises(SearchFailure) as info:
            constrained_search(cs, cfg, workers=4)
        assert info.value.best == exc.best
        return
    parallel = constrained_search(cs, cfg, workers=4)
    assert (parallel.function, parallel.restart) == (serial.function, serial.restart)


@pytest.mark.parametrize("balanced", [False, True])
def test_trajectory_invariants(balanced):
    """Spectrum stays exact, nonlinearity never drops, weight is kept when balanced."""
    cs = ConstraintSystem(n=7, require_balanced=balanced, min_nonlinearity=56)
    trace = []

    def record(restart, iteration, f, W):
        assert np.array_equal(W, walsh_spectrum(f).values)
        trace.append((restart, classify(f).nonlinearity, f.weight))

    try:
        constrained_search(cs, SearchConfig(seed=1, max_restarts=4, debug=True), on_accept=record)
    except SearchFailure:
        pass
    assert trace
    for (r0, nl0, _), (r1, nl1, _) in zip(trace, trace[1:]):
        if r0 == r1:
            assert nl1 >= nl0
    if balanced:
        assert {w for _, _, w in trace} == {64}


def test_sampled_moves():
    cfg = SearchConfig(seed=4, candidate_sampling=parse_sampling("sampled(40)"))
    f = gradient_descent_search(BALANCED_24, cfg)
    assert evaluate_constraints(f, BALANCED_24)[0]
    assert gradient_descent_search(BALANCED_24, cfg) == f
    cs = ConstraintSystem(n=6, min_nonlinearity=24)
    assert evaluate_constraints(gradient_descent_search(cs, SearchConfig(seed=4, candidate_sampling=8)), cs)[0]


def test_resilient_search_respects_floors():
    cs = ConstraintSystem(n=6, require_balanced=True, min_ci_order=1, min_nonlinearity=24, min_degree=3)
    f = gradient_descent_search(cs, SearchConfig(seed=2))
    r = classify(f)
    assert r.resiliency_order >= 1 and r.nonlinearity >= 24 and r.algebraic_degree >= 3


def test_ai_floor_checked_at_exit():
    cs = ConstraintSystem(n=6, min_nonlinearity=22, min_algebraic_immunity=3)
    r = classify(gradient_descent_search(cs, SearchConfig(seed=8)))
    assert r.algebraic_immunity == 3


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SearchConfig(seed=1 << 64)
    with pytest.raises(ValueError):
        SearchConfig(candidate_sampling="some")
    assert SearchConfig(candidate_sampling=5).to_dict()["candidate_sampling"] == "sampled(5)"
    assert parse_sampling("all-flips") == "all"


def test_search_needs_n():
    with pytest.raises(ValueError):
        constrained_search(ConstraintSystem(min_nonlinearity=2), SearchConfig())


def test_component_examples():
    f = TruthTable.from_callable(4, lambda a, b, c, d: (a & b) ^ (c & d))
    cs = ConstraintSystem(min_nonlinearity=6)
    assert check_component_constraints([f], cs) == (True, [])
    assert check_component_constraints([f], ConstraintSystem(min_nonlinearity=7)) == (False, [1])
    coords = [TruthTable.variable(i, 4) for i in range(1, 5)]
    ok, failing = check_component_constraints(coords, ConstraintSystem(min_nonlinearity=1))
    assert not ok and failing == list(range(1, 16))


def test_component_check_against_oracle():
    # coordinate functions of a fixed 4-bit permutation
    table = [0xC, 5, 6, 0xB, 9, 0, 0xA, 0xD, 3, 0xE, 0xF, 8, 4, 7, 1, 2]
    comps = [TruthTable([(v >> i) & 1 for v in table]) for i in range(4)]
    for bound in (2, 4, 5):
        expected = [c for c in range(1, 16) if nonlinearity_brute(combination_table(table, c, 4)) < bound]
        ok, failing = check_component_constraints(comps, ConstraintSystem(min_nonlinearity=bound))
        assert failing == expected and ok == (not expected)


def test_component_errors():
    with pytest.raises(ValueError):
        check_component_constraints([], ConstraintSystem())
    with pytest.raises(DimensionError):
        check_component_constraints([TruthTable.variable(1, 2)] * 3, ConstraintSystem())


def test_linear_combination_helper_matches_oracle():
    table = [3, 1, 0, 2]
    comps = [TruthTable([(v >> i) & 1 for v in table]) for i in range(2)]
    for c in (1, 2, 3):
        assert list(linear_combination(comps, c)) == combination_table(table, c, 2)
