import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parity_ca import Configuration, LocalRule, classify, elementary, verify_perfect
from parity_ca.sweep import (
    REPEATED,
    UNRESOLVED,
    block_counts,
    block_decrease_times,
    configurations,
    first_failure,
    fixed_points,
    parity_changes,
    sweep,
)


def test_configurations_layout():
    cells = configurations(3)
    assert cells.shape == (8, 3)
    assert "".join(map(str, cells[1])) == "001"
    assert "".join(map(str, cells[6])) == "110"
    assert np.array_equal(configurations(4, 5, 7), configurations(4)[5:7])


def test_block_counts():
    cells = np.array([[0, 0, 1, 1, 1, 0, 0], [1] * 7, [0, 1, 0, 1, 0, 1, 0]], dtype=np.uint8)
    assert block_counts(cells).tolist() == [2, 1, 6]


def _scalar_final(rule, config, budget):
    out = classify(rule, config, budget)
    if out.converged:
        return out.value, out.steps
    return (REPEATED if out.tag.value == "Cycle" else UNRESOLVED), -1


@pytest.mark.parametrize("number", [150, 232, 30, 184, 0, 204])
@pytest.mark.parametrize("n", [1, 4, 5, 7])
def test_batch_matches_scalar_elementary(number, n):
    rule = elementary(number)
    budget = 3 * n * n
    res = sweep(rule, n, budget)
    for v in range(1 << n):
        final, steps = _scalar_final(rule, Configuration.from_int(v, n), budget)
        assert (res.final[v], res.steps[v]) == (final, steps)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=32, max_size=32), st.integers(3, 9), st.integers(1, 40))
def test_batch_matches_scalar_radius2(table, n, budget):
    rule = LocalRule(2, table)
    res = sweep(rule, n, budget, chunk=37)
    for v in range(1 << n):
        final, steps = _scalar_final(rule, Configuration.from_int(v, n), budget)
        if final >= 0:
            assert (res.final[v], res.steps[v]) == (final, steps)
        else:
            # checkpoint detection may see the loop later than classify does
            assert res.final[v] < 0 and res.steps[v] == -1
            if res.final[v] == REPEATED:
                assert final == REPEATED


def test_jobs_do_not_change_results(rule_bfo):
    a = sweep(rule_bfo, 11, chunk=300)
    b = sweep(rule_bfo, 11, chunk=300, jobs=2)
    assert np.array_equal(a.final, b.final) and np.array_equal(a.steps, b.steps)


def test_verify_bfo_small(rule_bfo):
    report = verify_perfect(rule_bfo, [3, 5, 7])
    assert report.passed
    assert [s.checked for s in report.sizes] == [8, 32, 128]
    assert report.lines() == ["size=3 checked=8 status=pass",
                              "size=5 checked=32 status=pass",
                              "size=7 checked=128 status=pass"]


def test_verify_rule150_fails(rule150):
    report = verify_perfect(rule150, [7], max_steps=10000)
    first = report.first_failure
    assert not report.passed and first is not None
    assert first.counterexample.to_int() <= Configuration.from_string("0001000").to_int()
    assert first.outcome.tag.value == "Cycle"
    assert report.lines()[0] == "size=7 checked=128 status=fail counterexample=0000001 outcome=Cycle"


def test_verify_identity_fails(identity1):
    report = verify_perfect(identity1, [5], max_steps=100)
    first = report.first_failure
    assert str(first.counterexample) == "00001"
    assert first.outcome.tag.value in ("Cycle", "Budget")


def test_verify_rejects_even(rule_bfo):
    with pytest.raises(ValueError):
        verify_perfect(rule_bfo, [4])
    assert verify_perfect(rule_bfo, [4], allow_even=True).sizes[0].checked == 16


def test_first_failure_is_smallest(rule150):
    cex, out = first_failure(rule150, 7, 100)
    assert str(cex) == "0000001"
    assert not out.solves(cex)
    assert first_failure(elementary(204), 1, 5) is None


def test_parity_changes_and_fixed_points(rule_bfo, identity1):
    assert parity_changes(rule_bfo, 9).size == 0
    assert parity_changes(elementary(254), 5).size > 0
    assert fixed_points(rule_bfo, 9).tolist() == [0, 511]
    assert fixed_points(identity1, 3).size == 8


def test_block_decrease_times(rule_bfo):
    times = block_decrease_times(rule_bfo, 7)
    assert times[0] == -1 and times[127] == -1
    assert (times[1:127] >= 1).all()
    sel = block_decrease_times(rule_bfo, 9, values=[1, 3])
    full = block_decrease_times(rule_bfo, 9)
    assert sel.tolist() == [full[1], full[3]]


def test_bfo_thirteen_cell_orbit(rule_bfo):
    # a rotating pattern on 13 cells: parity is kept but no block ever disappears
    import oracle
    seed = "0001110101001"
    assert oracle.run(seed, oracle.bfo_local, 4, 8 * 169) == ("cycle", 13, 13)
    nxt = oracle.step(seed, oracle.bfo_local, 4)
    assert any(nxt == seed[k:] + seed[:k] for k in range(13))
    report = verify_perfect(rule_bfo, [13])
    assert report.lines() == ["size=13 checked=8192 status=fail counterexample=0001110101001 outcome=Cycle"]
    res = sweep(rule_bfo, 13)
    bad = {str(Configuration.from_int(int(v), 13).canonical()) for v in res.failures()}
    assert bad == {"0001110101001"} and res.failures().size == 13
    assert (block_decrease_times(rule_bfo, 13, values=res.failures()) == -1).all()
