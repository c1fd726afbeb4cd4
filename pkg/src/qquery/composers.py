"""Parallel composition of exact algorithms into bounded-error ones.

Sub-algorithms run side by side in orthogonal blocks of one larger state
space.  Their layers are merged kind-with-kind, so a query layer of the
composite asks every block's query at once and the query count is the
maximum over the blocks, not the sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .boolfn import TruthTable
from .state import (QueryAlgorithm, QueryStep, StructureError, UnitaryStep,
                    all_inputs)
from .transforms import PreconditionError, PropertyClass, classify, fix_sign

_R = 1.0 / math.sqrt(2.0)


def block_diagonal(*blocks) -> np.ndarray:
    """Direct sum of square matrices.  Called with two blocks of equal size in
    the pair construction; any number is accepted."""
    mats = [np.asarray(b.matrix if isinstance(b, UnitaryStep) else b, dtype=complex)
            for b in blocks]
    if not mats:
        raise StructureError("need at least one block")
    for a in mats:
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise StructureError(f"blocks must be square, got {a.shape}")
    if len({a.shape for a in mats}) != 1:
        raise StructureError(f"blocks differ in size: {[a.shape for a in mats]}")
    m = mats[0].shape[0]
    out = np.zeros((m * len(mats),) * 2, dtype=complex)
    for i, a in enumerate(mats):
        out[i * m:(i + 1) * m, i * m:(i + 1) * m] = a
    return out


def hadamard_pair_gate(dim: int, i: int, j: int) -> np.ndarray:
    """Identity except a 2x2 block (1, 1; 1, -1)/sqrt(2) on positions i, j."""
    if not (0 <= i < dim and 0 <= j < dim) or i == j:
        raise StructureError(f"bad pair ({i}, {j}) for dimension {dim}")
    u = np.eye(dim)
    u[i, i] = u[i, j] = u[j, i] = _R
    u[j, j] = -_R
    return u


def final_correlation_gate(m: int, acc1: int, acc2: int) -> np.ndarray:
    """2m x 2m gate mixing block 1's output ``acc1`` with block 2's ``acc2``.

    Positions are 0-based within each block.
    """
    if not (0 <= acc1 < m and 0 <= acc2 < m):
        raise StructureError(f"accepting outputs ({acc1}, {acc2}) out of range for m={m}")
    return hadamard_pair_gate(2 * m, acc1, m + acc2)


def build_u_prime(acc: Sequence[int], m: int = 4) -> np.ndarray:
    """Pairs block 0 with block 1 and block 2 with block 3 (4m x 4m)."""
    a = _block_positions(acc, m)
    u = hadamard_pair_gate(4 * m, a[0], a[1])
    return u @ hadamard_pair_gate(4 * m, a[2], a[3])


def build_u_double_prime(acc: Sequence[int], m: int = 4) -> np.ndarray:
    """Pairs block 0 with block 2 (4m x 4m)."""
    a = _block_positions(acc, m)
    return hadamard_pair_gate(4 * m, a[0], a[2])


def _block_positions(acc, m):
    acc = list(acc)
    if len(acc) != 4 or any(not 0 <= a < m for a in acc):
        raise StructureError(f"need four accepting outputs in 0..{m - 1}, got {acc}")
    return [k * m + a for k, a in enumerate(acc)]


def canonical_layers(alg: QueryAlgorithm) -> tuple[list[np.ndarray], list[tuple]]:
    """Rewrite ``alg`` as ``U0, Q1, U1, ..., QT, UT``.

    Adjacent unitaries are multiplied together and an identity is inserted
    between adjacent queries.  Returns ``(unitaries, queries)`` with
    ``len(unitaries) == len(queries) + 1``.
    """
    us = [np.eye(alg.m, dtype=complex)]
    qs = []
    for s in alg.steps:
        if isinstance(s, UnitaryStep):
            us[-1] = s.matrix @ us[-1]
        else:
            qs.append(s.vars)
            us.append(np.eye(alg.m, dtype=complex))
    return us, qs


@dataclass(frozen=True)
class CompositionPlan:
    sub_algorithms: tuple
    padded_dim: int
    total_vars: int
    variable_offsets: tuple
    accepting_indices: tuple
    classes: tuple

    @property
    def blocks(self) -> int:
        return len(self.sub_algorithms)


def _pad_unitary(u, m):
    out = np.eye(m, dtype=complex)
    k = u.shape[0]
    out[:k, :k] = u
    return out


def plan(subs: Sequence[QueryAlgorithm], classes: Sequence[PropertyClass]) -> CompositionPlan:
    m = max(a.m for a in subs)
    offsets = []
    total = 0
    for a in subs:
        offsets.append(total)
        total += a.n
    return CompositionPlan(tuple(subs), m, total, tuple(offsets),
                           tuple(c.accepting_output for c in classes), tuple(classes))


def assemble(p: CompositionPlan, final_gates: Sequence[np.ndarray], name: str,
             notes: str = "") -> QueryAlgorithm:
    """Merge the planned sub-algorithms layer by layer and append ``final_gates``.

    The composite starts in the normalised direct sum of the sub-algorithms'
    initial states and accepts only on block 0's accepting output.
    """
    m, k = p.padded_dim, p.blocks
    layers = [canonical_layers(a) for a in p.sub_algorithms]
    depth = max(len(q) for _, q in layers)
    steps = []
    for t in range(depth + 1):
        us = []
        for a, (u, _) in zip(p.sub_algorithms, layers):
            us.append(_pad_unitary(u[t], m) if t < len(u) else np.eye(m))
        steps.append(UnitaryStep(block_diagonal(*us)))
        if t == depth:
            break
        merged = []
        for a, (_, q), off in zip(p.sub_algorithms, layers, p.variable_offsets):
            spec = q[t] if t < len(q) else (None,) * a.m
            spec = tuple(None if v is None else v + off for v in spec)
            merged.extend(spec + (None,) * (m - a.m))
        steps.append(QueryStep(tuple(merged)))
    steps.extend(UnitaryStep(g) for g in final_gates)
    init = np.zeros(k * m, dtype=complex)
    for i, a in enumerate(p.sub_algorithms):
        init[i * m:i * m + a.m] = a.initial
    init /= math.sqrt(k)
    meas = [0] * (k * m)
    meas[p.accepting_indices[0]] = 1
    return QueryAlgorithm(n=p.total_vars, m=k * m, initial=init, steps=tuple(steps),
                          measurement=tuple(meas), name=name, notes=notes)


def _prepare(alg: QueryAlgorithm, need: str) -> tuple[QueryAlgorithm, PropertyClass]:
    pc = classify(alg)
    if not pc.exact:
        raise PreconditionError(f"{alg.name or 'sub-algorithm'} is not exact",
                                pc.witness1)
    if pc.property2minus and not pc.property2plus:
        alg = fix_sign(alg)
        pc = classify(alg)
    if need == "2+" and not pc.property2plus:
        raise PreconditionError(f"{alg.name or 'sub-algorithm'} lacks Property 2+/2-",
                                pc.witness3 or pc.witness1 or _first_minus(pc))
    if not pc.property3:
        raise PreconditionError(f"{alg.name or 'sub-algorithm'} lacks Property 3",
                                pc.witness3 or pc.witness1)
    return alg, pc


def _first_minus(pc):
    return min(pc.acc_minus) if pc.acc_minus else None


def compose_and_pair(a1: QueryAlgorithm, a2: QueryAlgorithm) -> QueryAlgorithm:
    """Run two exact Property-3 algorithms in parallel and correlate their
    accepting amplitudes with one final gate.

    Property 2- inputs are sign-fixed first.  When both blocks end up
    Property 2+ the composite computes ``f1 and f2``; otherwise it accepts
    exactly ``(Acc+ x Acc+) u (Acc- x Acc-)``.  Accepting inputs succeed with
    probability 1 and every input is answered correctly with probability at
    least 3/4.  The method used is recorded in ``notes``.
    """
    (b1, c1), (b2, c2) = _prepare(a1, "3"), _prepare(a2, "3")
    p = plan([b1, b2], [c1, c2])
    gate = final_correlation_gate(p.padded_dim, c1.accepting_output, c2.accepting_output)
    if c1.property2plus and c2.property2plus:
        notes = "and-pair: both blocks Property 2+, computes f1 AND f2"
    else:
        notes = "and-pair: Property 3 blocks, accepts (Acc+ x Acc+) u (Acc- x Acc-)"
    return assemble(p, [gate], f"and-pair({a1.name}, {a2.name})", notes)


def compose_quad(a1, a2, a3, a4) -> QueryAlgorithm:
    """Four exact Property 2+/2- algorithms in parallel; accepts iff at least
    three blocks accept, with correct-answer probability at least 9/16."""
    prepared = [_prepare(a, "2+") for a in (a1, a2, a3, a4)]
    p = plan([b for b, _ in prepared], [c for _, c in prepared])
    acc = [c.accepting_output for _, c in prepared]
    gates = [build_u_prime(acc, p.padded_dim), build_u_double_prime(acc, p.padded_dim)]
    names = ", ".join(a.name for a in (a1, a2, a3, a4))
    return assemble(p, gates, f"quad({names})", "quad: accepts iff >= 3 blocks accept")


def pair_function(c1: PropertyClass, n1: int, c2: PropertyClass, n2: int) -> TruthTable:
    """Accept set ``(Acc+ x Acc+) u (Acc- x Acc-)`` built from two classifications."""
    acc = {x + y for x in c1.acc_plus for y in c2.acc_plus}
    acc |= {x + y for x in c1.acc_minus for y in c2.acc_minus}
    return TruthTable.from_accepting(n1 + n2, acc)


def quad_function(tables: Sequence[TruthTable]) -> TruthTable:
    """``F(X1..X4) = 1`` iff at least three of the block functions accept."""
    if len(tables) != 4:
        raise ValueError("need four block functions")
    n = sum(t.n for t in tables)
    xs = all_inputs(n)
    count = np.zeros(len(xs), dtype=int)
    off = 0
    for t in tables:
        w = 1 << np.arange(t.n - 1, -1, -1)
        count += t.bits[xs[:, off:off + t.n] @ w]
        off += t.n
    return TruthTable(n, count >= 3)
