import pytest
from hypothesis import given
from hypothesis import strategies as st

import acccheck.ltl.check as check_mod
from acccheck.ltl import UnboundAtom, check_trace, parse_formula, parse_predicate

SS = {"ss": parse_predicate("ss = x > 0")}
FG = parse_formula("F G ss")


def rows(values):
    return [{"x": float(v)} for v in values]


def test_all_samples_in_band_gives_witness_zero():
    v = check_trace(FG, rows([1, 1, 1]), SS)
    assert v.holds and v.witness_index == 0 and v.status == "holds"


def test_failure_at_final_sample_violates():
    v = check_trace(FG, rows([1, 1, 1, -1]), SS)
    assert not v.holds
    assert v.counterexample_index == 3
    assert v.status == "violated"


def test_witness_marks_start_of_trailing_hold():
    v = check_trace(FG, rows([-1, 1, -1, 1, 1]), SS)
    assert v.holds and v.witness_index == 3


def test_globally_counterexample_is_first_failure():
    v = check_trace(parse_formula("G ss"), rows([1, -1, 1, -1]), SS)
    assert not v.holds and v.counterexample_index == 1


def test_other_shapes_report_start_of_trace():
    v = check_trace(parse_formula("ss U !ss"), rows([1, 1]), SS)
    assert not v.holds and v.counterexample_index == 0


def test_unbound_atom():
    with pytest.raises(UnboundAtom):
        check_trace(parse_formula("F G other"), rows([1]), SS)


def test_empty_trace():
    with pytest.raises(ValueError):
        check_trace(FG, [], SS)


def test_disagreement_becomes_internal_error(monkeypatch):
    real = check_mod.truth_table
    monkeypatch.setattr(check_mod, "truth_table", lambda f, w: [not b for b in real(f, w)])
    v = check_trace(FG, rows([1, 1]), SS)
    assert v.internal_error and v.status == "internal-error"
    assert not v.holds


def test_summary_text():
    v = check_trace(FG, rows([-1, 1]), SS)
    assert v.summary() == "holds=true witness_index=1"


@given(st.lists(st.booleans(), min_size=1, max_size=30))
def test_stutter_reduction(bits):
    v = check_trace(FG, rows([1 if b else -1 for b in bits]), SS)
    # FG ss on the stutter extension means ss holds on a suffix that includes the last sample
    assert v.holds == bits[-1]
    if v.holds:
        start = len(bits)
        while start > 0 and bits[start - 1]:
            start -= 1
        assert v.witness_index == start


@given(st.lists(st.booleans(), min_size=1, max_size=30))
def test_globally_is_a_plain_scan(bits):
    v = check_trace(parse_formula("G ss"), rows([1 if b else -1 for b in bits]), SS)
    assert v.holds == all(bits)
