"""Simulate, transform, compose and exhaustively verify quantum query algorithms
over Boolean functions given as truth tables."""

from .boolfn import (TruthTable, accepting_sensitivity, and_compose, complement,
                     complexity_facts, deterministic_complexity, named_function,
                     permute_variables, sensitivity)
from .catalog import (build, build_equality3, build_string_eq4, build_t2n_bounded,
                      build_t2n_exact, hadamard_tensor)
from .composers import compose_and_pair, compose_quad
from .state import (QueryAlgorithm, QueryStep, StructureError, UnitaryStep, apply_query,
                    apply_unitary, check_unitary, outcome_probabilities, run, run_all)
from .transforms import (PreconditionError, classify, fix_sign, invert_outputs,
                         move_accept, permute_outputs, permute_query_variables)
from .verifier import (check_lemma1, derive_truth_table, gap_report, verify,
                       verify_against)

__version__ = "0.1.0"
