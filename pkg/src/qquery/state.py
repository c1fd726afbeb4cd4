"""State vectors, unitary layers, phase queries and measurement.

A query algorithm is an ordered list of steps acting on an ``m``-dimensional
complex state.  Unitary steps are fixed matrices; query steps flip the sign of
amplitude ``i`` whenever the variable assigned to that amplitude is 1.

Variable indices inside query specs are 1-based (``x1`` is ``1``); amplitude
positions are 0-based everywhere in the Python API.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

TOL = 1e-9


class StructureError(ValueError):
    """Raised for dimension mismatches and malformed algorithm parts."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def check_unitary(u, tol: float = TOL) -> bool:
    """Return True iff ``max |U^H U - I| <= tol``."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    err = u.conj().T @ u - np.eye(u.shape[0])
    return bool(np.max(np.abs(err), initial=0.0) <= tol)


def as_unitary(u) -> np.ndarray:
    """Validate ``u`` and return it as a read-only complex matrix."""
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise StructureError(f"unitary must be square, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise StructureError("unitary has non-finite entries")
    if not check_unitary(u):
        raise StructureError("matrix is not unitary within 1e-9")
    return _frozen(u)


def as_state(amps) -> np.ndarray:
    a = np.asarray(amps, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise StructureError("state must be a non-empty vector")
    if not np.all(np.isfinite(a)):
        raise StructureError("state has non-finite amplitudes")
    if abs(np.vdot(a, a).real - 1.0) > TOL:
        raise StructureError("state is not normalised")
    return _frozen(a)


def parse_bits(bits: Union[str, Sequence[int]], n: int | None = None) -> tuple[int, ...]:
    """Turn ``"011"`` or ``[0, 1, 1]`` into a tuple of ints, x1 first."""
    if isinstance(bits, str):
        if not bits or set(bits) - {"0", "1"}:
            raise StructureError(f"not a bit string: {bits!r}")
        out = tuple(int(c) for c in bits)
    else:
        out = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in out):
            raise StructureError(f"not a bit vector: {bits!r}")
    if n is not None and len(out) != n:
        raise StructureError(f"expected {n} input bits, got {len(out)}")
    return out


def format_bits(bits: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in bits)


def all_inputs(n: int) -> np.ndarray:
    """All ``2**n`` inputs as a ``(2**n, n)`` uint8 array, big-endian rows."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8)


@dataclass(frozen=True)
class UnitaryStep:
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_unitary(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class QueryStep:
    """One query layer; ``vars[i]`` is the variable read by amplitude ``i``.

    ``None`` marks an amplitude whose sign is never flipped.
    """

    vars: tuple

    def __post_init__(self):
        vs = tuple(None if v is None else int(v) for v in self.vars)
        if any(v is not None and v < 1 for v in vs):
            raise StructureError(f"variable indices are 1-based: {vs}")
        object.__setattr__(self, "vars", vs)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def max_var(self) -> int:
        return max((v for v in self.vars if v is not None), default=0)

    def signs(self, inputs: np.ndarray) -> np.ndarray:
        """Sign pattern ``(len(inputs), m)`` for a batch of input rows."""
        inputs = np.atleast_2d(inputs)
        out = np.ones((inputs.shape[0], len(self.vars)))
        for i, v in enumerate(self.vars):
            if v is not None:
                out[:, i] = 1.0 - 2.0 * inputs[:, v - 1]
        return out


Step = Union[UnitaryStep, QueryStep]


@dataclass(frozen=True)
class QueryAlgorithm:
    n: int
    m: int
    initial: np.ndarray
    steps: tuple
    measurement: tuple
    name: str = ""
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0 or self.m < 1:
            raise StructureError("need n >= 0 and m >= 1")
        init = as_state(self.initial)
        if init.size != self.m:
            raise StructureError(f"initial state has length {init.size}, expected {self.m}")
        object.__setattr__(self, "initial", init)
        steps = tuple(self.steps)
        for k, s in enumerate(steps):
            if not isinstance(s, (UnitaryStep, QueryStep)):
                raise StructureError(f"step {k} is neither unitary nor query")
            if s.dim != self.m:
                raise StructureError(f"step {k} has dimension {s.dim}, expected {self.m}")
            if isinstance(s, QueryStep) and s.max_var() > self.n:
                raise StructureError(f"step {k} queries x{s.max_var()} but n = {self.n}")
        object.__setattr__(self, "steps", steps)
        meas = tuple(int(b) for b in self.measurement)
        if len(meas) != self.m or any(b not in (0, 1) for b in meas):
            raise StructureError(f"measurement must be {self.m} bits, got {meas}")
        object.__setattr__(self, "measurement", meas)

    def __eq__(self, other):
        if not isinstance(other, QueryAlgorithm):
            return NotImplemented
        if (self.n, self.m, self.measurement, len(self.steps)) != (
            other.n, other.m, other.measurement, len(other.steps)):
            return False
        if not np.array_equal(self.initial, other.initial):
            return False
        for a, b in zip(self.steps, other.steps):
            if type(a) is not type(b):
                return False
            if isinstance(a, QueryStep) and a.vars != b.vars:
                return False
            if isinstance(a, UnitaryStep) and not np.array_equal(a.matrix, b.matrix):
                return False
        return True

    __hash__ = None

    @property
    def query_count(self) -> int:
        return sum(isinstance(s, QueryStep) for s in self.steps)

    @property
    def accepting_outputs(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.measurement) if b)

    def replace(self, **changes) -> "QueryAlgorithm":
        kw = dict(n=self.n, m=self.m, initial=self.initial, steps=self.steps,
                  measurement=self.measurement, name=self.name, notes=self.notes)
        kw.update(changes)
        return QueryAlgorithm(**kw)


def query_count(alg: QueryAlgorithm) -> int:
    return alg.query_count


def basis_state(m: int, i: int = 0) -> np.ndarray:
    e = np.zeros(m, dtype=complex)
    e[i] = 1.0
    return e


def apply_unitary(state, u) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    u = u.matrix if isinstance(u, UnitaryStep) else np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape != (state.size, state.size):
        raise StructureError(f"cannot apply {u.shape} matrix to state of length {state.size}")
    return u @ state


def apply_query(state, q, bits) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    q = q if isinstance(q, QueryStep) else QueryStep(tuple(q))
    if q.dim != state.size:
        raise StructureError(f"query of length {q.dim} on state of length {state.size}")
    bits = parse_bits(bits)
    if q.max_var() > len(bits):
        raise StructureError(f"query reads x{q.max_var()} but input has {len(bits)} bits")
    return q.signs(np.array([bits]))[0] * state


def trace(alg: QueryAlgorithm, bits) -> list[np.ndarray]:
    """States after every step, starting with the initial state."""
    bits = parse_bits(bits, alg.n)
    states = [np.array(alg.initial)]
    cur = states[0]
    for s in alg.steps:
        if isinstance(s, UnitaryStep):
            cur = apply_unitary(cur, s)
        else:
            cur = apply_query(cur, s, bits)
        states.append(cur)
    return states


def run(alg: QueryAlgorithm, bits) -> np.ndarray:
    """Pre-measurement state of ``alg`` on one input."""
    return trace(alg, bits)[-1]


def run_all(alg: QueryAlgorithm, inputs: np.ndarray | None = None) -> np.ndarray:
    """Pre-measurement states for a batch of inputs (all ``2**n`` by default).

    Returns an array of shape ``(len(inputs), m)``; row ``r`` belongs to input
    row ``r`` of :func:`all_inputs`.
    """
    if inputs is None:
        inputs = all_inputs(alg.n)
    states = np.tile(alg.initial, (len(inputs), 1))
    for s in alg.steps:
        if isinstance(s, UnitaryStep):
            states = states @ s.matrix.T
        else:
            states = states * s.signs(inputs)
    return states


def outcome_probabilities(state, measurement) -> tuple[float, float]:
    state = np.asarray(state, dtype=complex)
    meas = np.asarray(measurement, dtype=int)
    if meas.shape != state.shape:
        raise StructureError("measurement and state lengths differ")
    w = np.abs(state) ** 2
    return float(w[meas == 0].sum()), float(w[meas == 1].sum())


def accept_probabilities(alg: QueryAlgorithm, states: np.ndarray | None = None) -> np.ndarray:
    """p("1") for every input, in :func:`all_inputs` order."""
    if states is None:
        states = run_all(alg)
    mask = np.asarray(alg.measurement, dtype=bool)
    return (np.abs(states[:, mask]) ** 2).sum(axis=1)
