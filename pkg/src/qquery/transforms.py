"""Algorithm transformations and the output-amplitude property classifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .boolfn import check_permutation
from .state import (TOL, QueryAlgorithm, QueryStep, UnitaryStep, all_inputs,
                    format_bits, run_all)


class PreconditionError(ValueError):
    """A transformation was applied to an algorithm lacking a required property."""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message if witness is None else f"{message} (input {witness})")
        self.witness = witness


@dataclass(frozen=True)
class PropertyClass:
    exact: bool
    property1: bool
    property2plus: bool
    property2minus: bool
    property3: bool
    accepting_output: Optional[int] = None
    acc_plus: frozenset = field(default_factory=frozenset)
    acc_minus: frozenset = field(default_factory=frozenset)
    # first input breaking property 1 / property 3, for error messages
    witness1: Optional[str] = None
    witness3: Optional[str] = None

    def label(self) -> str:
        if self.property2plus and self.property2minus:
            return "Property 2+/2- (never accepts)"
        if self.property2plus:
            return "Property 2+"
        if self.property2minus:
            return "Property 2-"
        if self.property3:
            return "Property 3"
        if self.property1:
            return "Property 1"
        return "exact" if self.exact else "none"


def classify(alg: QueryAlgorithm, states: Optional[np.ndarray] = None) -> PropertyClass:
    """Run every input and record which output-amplitude properties hold.

    Properties 2+, 2- and 3 are only granted together with Property 1, which
    keeps the flags nested: 2x implies 3 implies 1.
    """
    xs = all_inputs(alg.n)
    if states is None:
        states = run_all(alg, xs)
    w = np.abs(states) ** 2
    meas = np.asarray(alg.measurement, dtype=bool)
    p1 = w[:, meas].sum(axis=1)
    exact_rows = (p1 <= TOL) | (p1 >= 1 - TOL)
    exact = bool(exact_rows.all())
    distinct = w.max(axis=1) >= 1 - TOL
    prop1 = bool(distinct.all())
    witness1 = None if prop1 else format_bits(xs[np.argmin(distinct)])

    acc = alg.accepting_outputs
    if len(acc) != 1 or not prop1:
        return PropertyClass(exact, prop1, False, False, False,
                             acc[0] if len(acc) == 1 else None,
                             witness1=witness1)
    k = acc[0]
    amp = states[:, k]
    is_plus = np.abs(amp - 1) <= TOL
    is_minus = np.abs(amp + 1) <= TOL
    is_zero = np.abs(amp) <= TOL
    ok = is_plus | is_minus | is_zero
    prop3 = bool(ok.all())
    witness3 = None if prop3 else format_bits(xs[np.argmin(ok)])
    plus = frozenset(format_bits(xs[i]) for i in np.flatnonzero(is_plus))
    minus = frozenset(format_bits(xs[i]) for i in np.flatnonzero(is_minus))
    return PropertyClass(
        exact=exact,
        property1=prop1,
        property2plus=prop3 and not is_minus.any(),
        property2minus=prop3 and not is_plus.any(),
        property3=prop3,
        accepting_output=k,
        acc_plus=plus if prop3 else frozenset(),
        acc_minus=minus if prop3 else frozenset(),
        witness1=witness1,
        witness3=witness3,
    )


def invert_outputs(alg: QueryAlgorithm) -> QueryAlgorithm:
    """Flip every output value; the result computes the complement."""
    return alg.replace(measurement=tuple(1 - b for b in alg.measurement),
                       name=f"invert({alg.name})")


def _require_property1(alg: QueryAlgorithm) -> None:
    pc = classify(alg)
    if not pc.property1:
        raise PreconditionError("output permutation needs Property 1", pc.witness1)


def permute_outputs(alg: QueryAlgorithm, sigma: Sequence[int]) -> QueryAlgorithm:
    """New value at output ``i`` is the old value at output ``sigma[i]`` (0-based)."""
    sig = [int(s) for s in sigma]
    if sorted(sig) != list(range(alg.m)):
        raise ValueError(f"{sig} is not a permutation of 0..{alg.m - 1}")
    _require_property1(alg)
    meas = tuple(alg.measurement[s] for s in sig)
    return alg.replace(measurement=meas, name=f"permute-outputs({alg.name})")


def move_accept(alg: QueryAlgorithm, to: int) -> QueryAlgorithm:
    """Move the single accepting value of ``alg`` to output ``to`` (0-based)."""
    acc = alg.accepting_outputs
    if len(acc) != 1:
        raise ValueError(f"move_accept needs exactly one accepting output, got {acc}")
    if not 0 <= to < alg.m:
        raise ValueError(f"output {to} out of range 0..{alg.m - 1}")
    sig = list(range(alg.m))
    sig[acc[0]], sig[to] = sig[to], sig[acc[0]]
    out = permute_outputs(alg, sig)
    return out.replace(name=f"move-accept({alg.name}, {to})")


def permute_query_variables(alg: QueryAlgorithm, sigma: Sequence[int]) -> QueryAlgorithm:
    """Replace variable ``k`` by ``sigma[k-1]`` in every query.

    The transformed algorithm computes ``g(X) = f(x_s(1), ..., x_s(n))``.
    """
    sig = check_permutation(sigma, alg.n)
    steps = tuple(
        QueryStep(tuple(None if v is None else sig[v - 1] for v in s.vars))
        if isinstance(s, QueryStep) else s
        for s in alg.steps)
    return alg.replace(steps=steps, name=f"permute-vars({alg.name}, {sig})")


def sign_fix_gate(m: int, k: int) -> np.ndarray:
    u = np.eye(m)
    u[k, k] = -1.0
    return u


def fix_sign(alg: QueryAlgorithm) -> QueryAlgorithm:
    """Turn a Property 2- algorithm into a Property 2+ one with a final diagonal gate."""
    pc = classify(alg)
    if not pc.property2minus:
        raise PreconditionError("fix_sign needs Property 2-", pc.witness3 or pc.witness1)
    k = pc.accepting_output
    return alg.replace(steps=alg.steps + (UnitaryStep(sign_fix_gate(alg.m, k)),),
                       name=f"fix-sign({alg.name})")
