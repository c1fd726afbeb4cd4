import numpy as np
import pytest

from qquery.boolfn import EQUALITY3, STRING_EQ4, T4, T6_BOUNDED, T6_EXACT
from qquery.catalog import (bounded_query_matrix, build, build_equality3, build_string_eq4,
                            build_t2n_bounded, build_t2n_exact, exact_query_matrix,
                            hadamard_tensor, reconstruct_equality3, reconstruct_string_eq4)
from qquery.state import accept_probabilities, run, run_all
from qquery.transforms import classify
from qquery.verifier import check_lemma1, derive_truth_table

R = 2 ** -0.5


def test_hadamard_tensor():
    np.testing.assert_allclose(hadamard_tensor(1), [[R, R], [R, -R]])
    h2 = hadamard_tensor(2)
    np.testing.assert_allclose(h2 @ [1, 0, 0, 0], [0.5] * 4)
    np.testing.assert_allclose(h2 @ h2, np.eye(4), atol=1e-12)


def test_equality3_examples():
    alg = build_equality3()
    assert alg.query_count == 2
    assert alg.measurement == (1, 0, 0, 0)
    assert abs(run(alg, "000")[0]) ** 2 == pytest.approx(1)
    assert abs(run(alg, "011")[0]) == pytest.approx(0, abs=1e-9)
    assert run(alg, "111")[0] == pytest.approx(1, abs=1e-9)
    table, p = derive_truth_table(alg)
    assert table == EQUALITY3 and p == pytest.approx(1)
    assert classify(alg).property2plus


def test_string_eq4_examples():
    alg = build_string_eq4()
    assert alg.query_count == 2
    assert run(alg, "0101")[0] == pytest.approx(-1, abs=1e-9)
    assert run(alg, "0000")[0] == pytest.approx(1, abs=1e-9)
    assert abs(run(alg, "0110")[0]) == pytest.approx(0, abs=1e-9)
    assert derive_truth_table(alg)[0] == STRING_EQ4
    pc = classify(alg)
    assert pc.property3 and not pc.property2plus
    assert pc.acc_plus == {"0000", "1111"} and pc.acc_minus == {"0101", "1010"}


def _same_on_all_inputs(a, b):
    return np.allclose(run_all(a), run_all(b), atol=1e-9) and a.measurement == b.measurement


def test_search_reproduces_frozen_gates():
    assert _same_on_all_inputs(reconstruct_equality3(), build_equality3())
    assert _same_on_all_inputs(reconstruct_string_eq4(), build_string_eq4())


def test_exact_query_matrix_n3():
    # columns (x1,x2,y1,y2), (x2,x3,y2,y3), (y1,y3,x1,x3) with y_i numbered 3+i
    cols = [tuple(c) for c in zip(*exact_query_matrix(3))]
    assert cols == [(1, 2, 4, 5), (2, 3, 5, 6), (4, 6, 1, 3)]


@pytest.mark.parametrize("n", range(2, 9))
def test_exact_query_matrix_even_multiplicity(n):
    flat = np.array(exact_query_matrix(n)).ravel()
    counts = np.bincount(flat, minlength=2 * n + 1)[1:]
    assert np.all(counts % 2 == 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_t2n_exact_family(n):
    alg = build_t2n_exact(n)
    assert alg.query_count == n
    p = accept_probabilities(alg)
    assert np.all((np.abs(p) <= 1e-9) | (np.abs(p - 1) <= 1e-9))
    assert check_lemma1(n)


def test_t2n_exact_tables():
    assert derive_truth_table(build_t2n_exact(2))[0] == T4
    assert derive_truth_table(build_t2n_exact(3))[0] == T6_EXACT
    np.testing.assert_allclose(run(build_t2n_exact(2), "0000"), [1, 0, 0, 0], atol=1e-12)


def test_lemma1_range_guard():
    with pytest.raises(ValueError):
        check_lemma1(9)


def test_bounded_query_matrix_n3():
    assert bounded_query_matrix(3) == [[1, 2], [2, 3], [4, 5], [5, 6]]


def test_t2n_bounded_n3():
    alg = build_t2n_bounded(3)
    assert alg.query_count == 2
    table, p = derive_truth_table(alg)
    assert table == T6_BOUNDED
    assert p == pytest.approx(0.75)
    p1 = accept_probabilities(alg)
    assert p1[0] == pytest.approx(1)
    assert p1[0b100000] == pytest.approx(0.25)
    assert not classify(alg).property1


@pytest.mark.parametrize("n", range(2, 9))
def test_t2n_bounded_family_floor(n):
    alg = build_t2n_bounded(n)
    assert alg.query_count == (n + 1) // 2
    p1 = accept_probabilities(alg)
    acc = p1 > 0.5
    assert np.all(np.abs(p1[acc] - 1) <= 1e-9)
    # rejecting inputs land on 1/4 or 0, so p("0") is at least 3/4 with 3/4 attained
    assert np.all(p1[~acc] <= 0.25 + 1e-9)
    assert np.isclose(p1[~acc].max(), 0.25, atol=1e-9)


def test_build_by_name():
    assert build("t2n-exact:3").n == 6
    assert build("t2n-bounded", 4).query_count == 2
    with pytest.raises(ValueError):
        build("t2n-exact")
    with pytest.raises(KeyError):
        build("nope")
