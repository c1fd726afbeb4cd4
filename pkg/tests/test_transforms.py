import itertools

import numpy as np
import pytest

from qquery.boolfn import EQUALITY3, STRING_EQ4, TruthTable, complement, permute_variables
from qquery.catalog import build_equality3, build_string_eq4, build_t2n_bounded, build_t2n_exact
from qquery.state import UnitaryStep, accept_probabilities, all_inputs, run_all
from qquery.tables import s3_family, variable_orbit
from qquery.transforms import (PreconditionError, classify, fix_sign, invert_outputs,
                               move_accept, permute_outputs, permute_query_variables,
                               sign_fix_gate)
from qquery.verifier import derive_truth_table

F3_2 = TruthTable.from_function(3, lambda a, b, c: (a ^ b) and not (b ^ c))
F3_3 = TruthTable.from_function(3, lambda a, b, c: (a ^ b) and (b ^ c))
F3_4 = TruthTable.from_function(3, lambda a, b, c: not (a ^ b) and (b ^ c))


def catalog():
    return [build_equality3(), build_string_eq4(), build_t2n_exact(2), build_t2n_exact(3),
            build_t2n_bounded(2), build_t2n_bounded(3)]


def table(alg):
    return derive_truth_table(alg)[0]


@pytest.mark.parametrize("alg", catalog(), ids=lambda a: a.name)
def test_inversion_complements(alg):
    inv = invert_outputs(alg)
    assert inv.query_count == alg.query_count
    np.testing.assert_allclose(accept_probabilities(inv), 1 - accept_probabilities(alg),
                               atol=1e-9)
    if classify(alg).exact:
        assert table(inv) == complement(table(alg))


def test_inversion_examples():
    assert invert_outputs(build_string_eq4()).measurement == (0, 1, 1, 1)
    alg = build_equality3()
    twice = invert_outputs(invert_outputs(alg))
    assert twice.measurement == alg.measurement and twice.steps == alg.steps
    assert table(invert_outputs(alg)) == complement(EQUALITY3)


def test_move_accept_placements():
    alg = build_equality3()
    assert table(move_accept(alg, 1)) == F3_2
    assert table(move_accept(alg, 2)) == F3_3
    assert table(move_accept(alg, 3)) == F3_4
    assert table(move_accept(alg, 0)) == EQUALITY3


@pytest.mark.parametrize("alg", [a for a in catalog() if classify(a).property1],
                         ids=lambda a: a.name)
def test_output_permutations_stay_exact(alg):
    for sig in itertools.permutations(range(alg.m)):
        p = accept_probabilities(permute_outputs(alg, sig))
        assert np.all((np.abs(p) <= 1e-9) | (np.abs(p - 1) <= 1e-9))


def test_output_permutation_needs_property1():
    with pytest.raises(PreconditionError) as err:
        move_accept(build_t2n_bounded(3), 2)
    assert err.value.witness is not None


def test_identity_output_permutation():
    alg = build_string_eq4()
    assert table(permute_outputs(alg, (0, 1, 2, 3))) == STRING_EQ4


@pytest.mark.parametrize("alg", [a for a in catalog() if a.n <= 4], ids=lambda a: a.name)
def test_variable_permutation_law(alg):
    f = table(alg)
    p = accept_probabilities(alg)
    for sig in itertools.permutations(range(1, alg.n + 1)):
        t = permute_query_variables(alg, sig)
        assert table(t) == permute_variables(f, sig)
        xs = all_inputs(alg.n)
        moved = xs[:, [s - 1 for s in sig]] @ (1 << np.arange(alg.n - 1, -1, -1))
        np.testing.assert_allclose(accept_probabilities(t), p[moved], atol=1e-9)


def test_variable_permutation_example():
    g = table(permute_query_variables(build_string_eq4(), (2, 4, 1, 3)))
    assert g == TruthTable.from_function(4, lambda a, b, c, d: not ((a ^ b) or (c ^ d)))


def test_identity_variable_permutation():
    alg = build_equality3()
    assert permute_query_variables(alg, (1, 2, 3)).steps == alg.steps


def test_third_method_adds_nothing_for_s3():
    fam = s3_family()
    assert variable_orbit(fam) == {m.table for m in fam}


def test_classify_examples():
    assert classify(build_equality3()).property2plus
    pc = classify(build_string_eq4())
    assert pc.property3 and pc.acc_plus == {"0000", "1111"}
    assert pc.acc_minus == {"0101", "1010"}
    assert not classify(build_t2n_bounded(3)).property1


@pytest.mark.parametrize("alg", catalog(), ids=lambda a: a.name)
def test_property_hierarchy(alg):
    pc = classify(alg)
    if pc.property2plus or pc.property2minus:
        assert pc.property3
    if pc.property3:
        assert pc.property1
        assert pc.acc_plus | pc.acc_minus == table(alg).accepting()


def _minus_version(alg):
    k = alg.accepting_outputs[0]
    return alg.replace(steps=alg.steps + (UnitaryStep(sign_fix_gate(alg.m, k)),))


def test_fix_sign_round_trip():
    minus = _minus_version(build_equality3())
    pc = classify(minus)
    assert pc.property2minus and not pc.property2plus
    fixed = fix_sign(minus)
    assert classify(fixed).property2plus
    assert table(fixed) == table(minus) == EQUALITY3
    np.testing.assert_allclose(run_all(fixed), run_all(build_equality3()), atol=1e-12)


def test_sign_gate_self_inverse():
    g = sign_fix_gate(4, 0)
    np.testing.assert_array_equal(g @ g, np.eye(4))


def test_fix_sign_precondition():
    with pytest.raises(PreconditionError):
        fix_sign(build_string_eq4())
