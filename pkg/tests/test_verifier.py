import time

import numpy as np
import pytest

from qquery.boolfn import (EQUALITY3, STRING_EQ4, T6_BOUNDED, TruthTable, and_compose,
                           complement)
from qquery.catalog import build_equality3, build_string_eq4, build_t2n_bounded, build_t2n_exact
from qquery.composers import compose_and_pair, compose_quad
from qquery.state import QueryAlgorithm
from qquery.verifier import (Verdict, check_lemma1, derive_truth_table, gap_report, identify,
                             nice_fraction, verdict_for, verify, verify_against)

EQ = build_equality3()
SEQ = build_string_eq4()


def test_derive_examples():
    assert derive_truth_table(EQ) == (EQUALITY3, pytest.approx(1.0))
    t, p = derive_truth_table(compose_and_pair(EQ, EQ))
    assert t == and_compose(EQUALITY3, EQUALITY3) and p == pytest.approx(0.75)
    trivial = QueryAlgorithm(n=1, m=2, initial=[1, 0], steps=(), measurement=(1, 0))
    t, p = derive_truth_table(trivial)
    assert t == TruthTable(1, [1, 1]) and p == 1.0


def test_verdict_thresholds():
    assert verdict_for(1.0) is Verdict.EXACT
    assert verdict_for(0.75) is Verdict.BOUNDED
    assert verdict_for(0.5) is Verdict.INVALID
    assert verdict_for(0.2) is Verdict.INVALID


def test_verify_against_examples():
    r = verify_against(SEQ, STRING_EQ4)
    assert r.classification is Verdict.EXACT
    assert r.query_count == 2 and r.complexity.deterministic_exact == 4
    r = verify_against(build_t2n_bounded(3), T6_BOUNDED)
    assert r.probability_label == "BOUNDED(3/4)"
    assert r.query_count == 2 and r.complexity.deterministic_exact == 6
    assert verify_against(EQ, complement(EQUALITY3)).classification is Verdict.INVALID
    with pytest.raises(ValueError):
        verify_against(EQ, STRING_EQ4)


def test_exact_reports_have_sharp_probabilities():
    for alg in (EQ, SEQ, build_t2n_exact(3)):
        r = verify(alg)
        assert r.classification is Verdict.EXACT
        ps = np.array([p for _, p in r.per_input])
        assert np.all((ps <= 1e-9) | (ps >= 1 - 1e-9))


def test_report_serialisation():
    d = verify(SEQ).to_dict()
    assert d["property_class"]["accepting_output"] == 1
    assert d["property_class"]["acc_minus"] == ["0101", "1010"]
    assert len(d["per_input"]) == 16
    text = verify(SEQ).format_text()
    assert "Property 3" in text and "Acc-" in text


def test_tied_algorithm_is_invalid():
    r2 = 2 ** -0.5
    coin = QueryAlgorithm(n=1, m=2, initial=[r2, r2], steps=(), measurement=(1, 0))
    assert verify(coin).classification is Verdict.INVALID


@pytest.mark.parametrize("n", [2, 3, 5])
def test_lemma1(n):
    assert check_lemma1(n)


def test_gap_report_examples():
    assert "D=3, Q_E=2" in gap_report(EQ).summary()
    assert "D=8, Q=2, p=3/4" in gap_report(compose_and_pair(SEQ, SEQ)).summary()
    quad = gap_report(compose_quad(EQ, EQ, EQ, EQ))
    assert quad.complexity.sensitivity == 9
    assert quad.complexity.deterministic_lower >= 9
    assert "Q=2, p=9/16" in quad.summary()


def test_gap_report_without_exact_depth():
    rep = gap_report(compose_quad(EQ, EQ, EQ, EQ), exact_limit=8)
    assert rep.summary() == "D>=9 (s=9), Q=2, p=9/16"


def test_depth_at_least_sensitivity():
    algs = [EQ, SEQ, build_t2n_exact(2), build_t2n_exact(3), build_t2n_bounded(3),
            compose_and_pair(EQ, EQ), compose_and_pair(SEQ, SEQ)]
    for alg in algs:
        c = verify(alg).complexity
        assert c.deterministic_exact >= c.sensitivity


def test_identify():
    assert identify(EQUALITY3) == "EQUALITY3"
    assert identify(complement(STRING_EQ4)) == "NOT STRING_EQ4"
    assert identify(TruthTable(2, [0, 1, 1, 0])) is None


def test_nice_fraction():
    assert nice_fraction(0.5625) == "9/16"
    assert nice_fraction(1.0) == "1"


def test_twelve_variable_verification_is_fast():
    comp = compose_quad(EQ, EQ, EQ, EQ)
    t = time.perf_counter()
    r = verify(comp, per_input=False, exact_limit=0)
    assert time.perf_counter() - t < 1.0
    assert r.probability_label == "BOUNDED(9/16)"
