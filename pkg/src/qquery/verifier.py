"""Exhaustive verification: what an algorithm computes and how well."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import boolfn
from .boolfn import ComplexityFacts, TruthTable, complexity_facts
from .catalog import build_t2n_exact
from .state import TOL, QueryAlgorithm, accept_probabilities, all_inputs, format_bits, run_all
from .transforms import PropertyClass, classify

PER_INPUT_MAX_VARS = 12


class Verdict(str, enum.Enum):
    EXACT = "EXACT"
    BOUNDED = "BOUNDED"
    INVALID = "INVALID"


def verdict_for(min_correct: float) -> Verdict:
    # p = 1/2 is a coin flip, so bounded error needs strictly more
    if min_correct >= 1 - TOL:
        return Verdict.EXACT
    if min_correct > 0.5 + TOL:
        return Verdict.BOUNDED
    return Verdict.INVALID


def nice_fraction(p: float, max_den: int = 64) -> str:
    """Render a probability as a short fraction when it is one (within 1e-9)."""
    fr = Fraction(p).limit_denominator(max_den)
    if abs(float(fr) - p) <= TOL:
        return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"
    return f"{p:.6g}"


def derive_truth_table(alg: QueryAlgorithm) -> tuple[TruthTable, float]:
    """Majority output on every input, and the smallest winning probability.

    A returned probability of 1/2 (a tie somewhere) marks the algorithm as
    computing no function; tied inputs are tabulated as 0.
    """
    p1 = accept_probabilities(alg)
    table = TruthTable(alg.n, p1 > 0.5 + TOL)
    winning = np.maximum(p1, 1 - p1)
    return table, float(winning.min())


@dataclass
class VerificationReport:
    name: str
    derived_table: TruthTable
    min_p_accept: Optional[float]
    min_p_reject: Optional[float]
    min_correct: float
    classification: Verdict
    property_class: PropertyClass
    query_count: int
    complexity: ComplexityFacts
    target: Optional[TruthTable] = None
    per_input: Optional[list] = field(default=None, repr=False)

    @property
    def probability_label(self) -> str:
        if self.classification is Verdict.BOUNDED:
            return f"BOUNDED({nice_fraction(self.min_correct)})"
        return self.classification.value

    def to_dict(self) -> dict:
        pc = self.property_class
        c = self.complexity
        out = {
            "name": self.name,
            "n": self.derived_table.n,
            "derived_table": format_bits(self.derived_table.bits),
            "classification": self.classification.value,
            "min_correct": self.min_correct,
            "min_p_accept": self.min_p_accept,
            "min_p_reject": self.min_p_reject,
            "query_count": self.query_count,
            "property_class": {
                "exact": pc.exact,
                "property1": pc.property1,
                "property2plus": pc.property2plus,
                "property2minus": pc.property2minus,
                "property3": pc.property3,
                "accepting_output": None if pc.accepting_output is None else pc.accepting_output + 1,
                "acc_plus": sorted(pc.acc_plus),
                "acc_minus": sorted(pc.acc_minus),
            },
            "complexity": {
                "sensitivity": c.sensitivity,
                "accepting_sensitivity": c.accepting_sensitivity,
                "deterministic_exact": c.deterministic_exact,
                "deterministic_lower": c.deterministic_lower,
                "deterministic_upper": c.deterministic_upper,
            },
        }
        if self.target is not None:
            out["target_table"] = format_bits(self.target.bits)
        if self.per_input is not None:
            out["per_input"] = [{"input": x, "p1": p} for x, p in self.per_input]
        return out

    def format_text(self) -> str:
        c = self.complexity
        lines = [
            f"algorithm        {self.name}",
            f"variables        {self.derived_table.n}",
            f"queries          {self.query_count}",
            f"classification   {self.probability_label}",
            f"min p(correct)   {nice_fraction(self.min_correct)}",
            f"property class   {self.property_class.label()}",
            f"sensitivity      s={c.sensitivity}, s1={c.accepting_sensitivity}",
            f"deterministic    {c.describe()}",
        ]
        pc = self.property_class
        if pc.property3:
            lines.append(f"accepting output a{pc.accepting_output + 1}")
            lines.append(f"Acc+             {{{', '.join(sorted(pc.acc_plus))}}}")
            lines.append(f"Acc-             {{{', '.join(sorted(pc.acc_minus))}}}")
        if self.per_input is not None:
            lines.append("input  p(1)")
            lines.extend(f"{x}  {nice_fraction(p)}" for x, p in self.per_input)
        return "\n".join(lines)


def _report(alg, target, per_input, exact_limit):
    states = run_all(alg)
    p1 = accept_probabilities(alg, states)
    derived = TruthTable(alg.n, p1 > 0.5 + TOL)
    ref = derived if target is None else target
    want = ref.bits.astype(bool)
    correct = np.where(want, p1, 1 - p1)
    min_correct = float(correct.min())
    if target is None and np.any(np.abs(p1 - 0.5) <= TOL):
        min_correct = 0.5
    if per_input is None:
        per_input = alg.n <= PER_INPUT_MAX_VARS
    detail = None
    if per_input:
        xs = all_inputs(alg.n)
        detail = [(format_bits(x), float(p)) for x, p in zip(xs, p1)]
    return VerificationReport(
        name=alg.name,
        derived_table=derived,
        min_p_accept=float(p1[want].min()) if want.any() else None,
        min_p_reject=float((1 - p1)[~want].min()) if (~want).any() else None,
        min_correct=min_correct,
        classification=verdict_for(min_correct),
        property_class=classify(alg, states),
        query_count=alg.query_count,
        complexity=complexity_facts(ref, exact_limit),
        target=target,
        per_input=detail,
    )


def verify(alg: QueryAlgorithm, per_input: Optional[bool] = None,
           exact_limit: int = boolfn.EXACT_D_MAX_VARS) -> VerificationReport:
    """Report against the algorithm's own derived (majority) function."""
    return _report(alg, None, per_input, exact_limit)


def verify_against(alg: QueryAlgorithm, f: TruthTable, per_input: Optional[bool] = None,
                   exact_limit: int = boolfn.EXACT_D_MAX_VARS) -> VerificationReport:
    """Report with correctness measured against ``f``."""
    if f.n != alg.n:
        raise ValueError(f"algorithm has n={alg.n} but function has n={f.n}")
    return _report(alg, f, per_input, exact_limit)


def lemma1_holds(states: np.ndarray) -> bool:
    """Every amplitude has modulus 1/2 and each row has an even number of -1/2."""
    if not np.all(np.abs(states.imag) <= TOL):
        return False
    re = states.real
    if not np.all(np.abs(np.abs(re) - 0.5) <= TOL):
        return False
    return bool(np.all((re < 0).sum(axis=1) % 2 == 0))


def check_lemma1(n: int) -> bool:
    """Check the post-query amplitudes of the exact T_2n algorithm on all inputs."""
    if not 2 <= n <= 8:
        raise ValueError("check_lemma1 covers 2 <= n <= 8")
    alg = build_t2n_exact(n)
    before_last = alg.replace(steps=alg.steps[:-1])
    return lemma1_holds(run_all(before_last))


def identify(table: TruthTable) -> Optional[str]:
    """Name ``table`` if it is a named function or the complement of one."""
    for name, f in boolfn.NAMED.items():
        if f == table:
            return name
        if boolfn.complement(f) == table:
            return f"NOT {name}"
    return None


@dataclass
class GapReport:
    name: str
    function: Optional[str]
    complexity: ComplexityFacts
    query_count: int
    min_correct: float
    classification: Verdict
    property_label: str

    def summary(self) -> str:
        c = self.complexity
        if c.deterministic_exact is not None:
            d = f"D={c.deterministic_exact}"
        else:
            d = f"D>={c.deterministic_lower} (s={c.sensitivity})"
        if self.classification is Verdict.EXACT:
            out = f"{d}, Q_E={self.query_count}"
        else:
            out = f"{d}, Q={self.query_count}, p={nice_fraction(self.min_correct)}"
        if c.deterministic_exact is not None:
            out += f" (s={c.sensitivity})"
        return out

    def to_dict(self) -> dict:
        c = self.complexity
        return {
            "name": self.name,
            "function": self.function,
            "deterministic_exact": c.deterministic_exact,
            "deterministic_lower": c.deterministic_lower,
            "deterministic_upper": c.deterministic_upper,
            "sensitivity": c.sensitivity,
            "query_count": self.query_count,
            "min_correct": self.min_correct,
            "classification": self.classification.value,
            "property_class": self.property_label,
        }

    def format_text(self) -> str:
        fn = self.function or "(unnamed)"
        return f"{self.name:<40} {fn:<16} {self.summary()}  [{self.property_label}]"


def gap_report(alg: QueryAlgorithm, exact_limit: int = boolfn.EXACT_D_MAX_VARS) -> GapReport:
    r = verify(alg, per_input=False, exact_limit=exact_limit)
    return GapReport(alg.name, identify(r.derived_table), r.complexity, r.query_count,
                     r.min_correct, r.classification, r.property_class.label())
