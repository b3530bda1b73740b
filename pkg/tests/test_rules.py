import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from parity_ca import (
    BFO_NUMBER,
    LocalRule,
    RedundantActiveWarning,
    RuleConflictError,
    RuleNumberRangeError,
    TransitionPattern,
    bfo,
    bfo_explicit,
    bfo_minimized,
    compile_patterns,
    elementary,
    rule_from_number,
    wolfram_number,
)
from parity_ca.rules import format_patterns, load_rule_file, parse_patterns, parse_rule_number
from parity_ca.sweep import configurations, step_batch

# reference value for the compact radius-4 rule
REFERENCE_NUMBER = (
    "12766019579927887748828308783632125137208948629571434199404394002671695991869267727"
    + "072917454377539194754200976283425175983876539715064584172642413634846720"
)


def test_pattern_parsing_and_matching():
    p = parse_patterns("***1{1}101* -> 0  # T9")[0]
    assert p.cells == "***11101*" and p.output == 0 and p.name == "T9"
    assert p.radius == 4 and p.centre == "1"
    assert p.matches("000111010") and not p.matches("000111000")


def test_pattern_length_must_be_odd():
    with pytest.raises(ValueError):
        TransitionPattern("0*0*", 1)
    with pytest.raises(ValueError):
        TransitionPattern("0x0", 1)


def test_pattern_codes_cover_wildcards():
    p = TransitionPattern("1*0", 1)
    assert sorted(p.codes().tolist()) == [0b100, 0b110]


def test_empty_patterns_give_identity():
    rule = compile_patterns([], 1)
    assert rule == LocalRule.identity(1)
    assert [rule(k) for k in range(8)] == [(k >> 1) & 1 for k in range(8)]


@pytest.mark.filterwarnings("ignore::parity_ca.RedundantActiveWarning")
def test_conflict_is_reported():
    a = TransitionPattern("1****", 0, "A")
    b = TransitionPattern("***1*", 1, "B")
    with pytest.raises(RuleConflictError) as err:
        compile_patterns([a, b], 2)
    assert "A" in str(err.value) and "B" in str(err.value)
    assert "10010" in str(err.value)


def test_redundant_active_warns():
    with pytest.warns(RedundantActiveWarning):
        compile_patterns([TransitionPattern("010", 1, "inert")], 1)


def test_radius_mismatch():
    with pytest.raises(ValueError):
        compile_patterns([TransitionPattern("01010", 1)], 1)


# ---------------------------------------------------------------- numbering

def test_rule150_number():
    xor3 = LocalRule.from_function(1, lambda w: w[0] ^ w[1] ^ w[2])
    # odd-weight neighbourhoods 001, 010, 100, 111
    assert wolfram_number(xor3) == 2 ** 1 + 2 ** 2 + 2 ** 4 + 2 ** 7 == 150
    assert rule_from_number(150, 1) == xor3 == elementary(150)


def test_zero_rule():
    for r in (0, 1, 2, 4):
        assert wolfram_number(LocalRule(r, [0] * (1 << (2 * r + 1)))) == 0
    assert not rule_from_number(0, 2).table.any()


def test_number_range():
    with pytest.raises(RuleNumberRangeError):
        rule_from_number(256, 1)
    with pytest.raises(RuleNumberRangeError):
        rule_from_number(-1, 1)
    assert wolfram_number(rule_from_number(255, 1)) == 255


def test_parse_rule_number():
    assert parse_rule_number(" 150 ") == 150
    for bad in ("1e3", "-5", "0x10", ""):
        with pytest.raises(ValueError):
            parse_rule_number(bad)


@settings(max_examples=40)
@given(st.sampled_from([1, 2, 4]).flatmap(
    lambda r: st.tuples(st.just(r), st.integers(0, 2 ** (2 ** (2 * r + 1)) - 1))))
def test_number_round_trip(case):
    r, number = case
    rule = rule_from_number(number, r)
    assert wolfram_number(rule) == number
    assert rule_from_number(wolfram_number(rule), r) == rule
    assert rule_from_number(str(number), r) == rule


# ---------------------------------------------------------------- BFO

def test_rule_number_gate():
    assert len(REFERENCE_NUMBER) == 155
    assert str(wolfram_number(compile_patterns(bfo_minimized(), 4))) == REFERENCE_NUMBER
    assert str(BFO_NUMBER) == REFERENCE_NUMBER


def test_number_from_independent_matcher():
    number = sum(int(oracle.bfo_local(format(k, "09b"))) << k for k in range(512))
    assert str(number) == REFERENCE_NUMBER


def test_two_forms_compile_to_one_table():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        a = compile_patterns(bfo_minimized(), 4)
        b = compile_patterns(bfo_explicit(), 4)
    assert np.array_equal(a.table, b.table)
    assert rule_from_number(int(REFERENCE_NUMBER), 4) == a == bfo()


def test_transcriptions():
    minimised = bfo_minimized()
    explicit = {p.name: p for p in bfo_explicit()}
    assert len(minimised) == 11 and len(explicit) == 12
    assert sorted(explicit) == sorted(f"T{i}" for i in range(1, 13))
    assert explicit["T9"].cells == "***11101*" and explicit["T9"].output == 0
    assert ("11101****", 0) in [(p.cells, p.output) for p in minimised]
    for cells, out in oracle.FIG7:
        assert (cells, int(out)) in [(p.cells, p.output) for p in explicit.values()]


def test_worked_entry():
    # matched by both T1 and T2
    assert bfo()("111100000") == 1


def test_quiescence():
    rule = bfo()
    assert rule("000000000") == 0 and rule("111111111") == 1
    assert rule.quiescent_consistent


def test_active_entries_are_the_pattern_matches():
    rule = bfo()
    for k in range(512):
        w = format(k, "09b")
        assert rule.is_active(k) == any(
            all(p == "*" or p == c for p, c in zip(cells, w)) for cells, _ in oracle.FIG7)


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9, 11, 13])
def test_active_transitions_come_in_pairs(n):
    # a position is active exactly when the step changes its cell
    cells = configurations(n)
    changed = step_batch(bfo(), cells) != cells
    assert (changed.sum(axis=1) % 2 == 0).all()


# ---------------------------------------------------------------- files

def test_pattern_file_round_trip(tmp_path):
    text = format_patterns(bfo_explicit())
    assert parse_patterns(text) == bfo_explicit()
    path = tmp_path / "bfo.rule"
    path.write_text("# compact form\n\n" + format_patterns(bfo_minimized()))
    assert load_rule_file(path) == bfo()


def test_pattern_file_errors(tmp_path):
    with pytest.raises(ValueError):
        parse_patterns("0101 -> 1")
    with pytest.raises(ValueError):
        parse_patterns("010 => 1")
    path = tmp_path / "empty.rule"
    path.write_text("# nothing\n")
    with pytest.raises(ValueError):
        load_rule_file(path)
