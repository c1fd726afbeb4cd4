"""Concrete query algorithms: EQUALITY3, STRING_EQ4 and the two T_2n families."""

from __future__ import annotations

import itertools
import math
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .boolfn import TruthTable
from .state import (QueryAlgorithm, QueryStep, StructureError, UnitaryStep,
                    all_inputs, basis_state, run_all)

_H1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def hadamard_tensor(k: int) -> np.ndarray:
    """The ``2**k``-dimensional real Hadamard transform ``H^{(x)k}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return reduce(np.kron, [_H1] * k)


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending basis state ``j`` to ``perm[j]``."""
    m = len(perm)
    p = np.zeros((m, m))
    p[list(perm), list(range(m))] = 1.0
    return p


# Gates for the two exact 2-query algorithms.  Only the first layer and the
# measurement are fixed by text; the rest came out of `search_two_query`
# (see `reconstruct_equality3` / `reconstruct_string_eq4`) and are frozen here.
_EQ3_Q0 = (1, 2, 1, 3)
_EQ3_Q1 = (1, 1, 3, 2)
_EQ3_OUT = (0, 2, 3, 1)
_SEQ4_Q0 = (1, 1, 2, 3)
_SEQ4_Q1 = (2, 4, 3, 4)
_SEQ4_OUT = (0, 1, 2, 3)


def _two_query(n, q0, q1, out_perm, name, notes="", u1=None):
    h = hadamard_tensor(2)
    u1 = np.eye(4) if u1 is None else u1
    return QueryAlgorithm(
        n=n, m=4, initial=basis_state(4),
        steps=(UnitaryStep(h), QueryStep(q0), UnitaryStep(u1), QueryStep(q1),
               UnitaryStep(permutation_matrix(out_perm) @ h)),
        measurement=(1, 0, 0, 0), name=name, notes=notes)


def build_equality3() -> QueryAlgorithm:
    """Exact 2-query algorithm for EQUALITY3, accepting output 0 with amplitude +1.

    Outputs 1, 2, 3 collect the inputs of F3^2, F3^3, F3^4 respectively, so
    moving the single accepting value reproduces the whole S3 family.
    """
    return _two_query(3, _EQ3_Q0, _EQ3_Q1, _EQ3_OUT, "equality3")


def build_string_eq4() -> QueryAlgorithm:
    """Exact 2-query algorithm for STRING_EQ4.

    Accepting amplitude is +1 on 0000, 1111 and -1 on 0101, 1010.
    """
    return _two_query(4, _SEQ4_Q0, _SEQ4_Q1, _SEQ4_OUT, "string-eq4")


def _characters(m: int = 4) -> np.ndarray:
    return hadamard_tensor(int(math.log2(m))) * math.sqrt(m)


def search_two_query(
    n: int,
    output_classes: Sequence[TruthTable],
    first_query: Sequence[int],
    acc_plus: Optional[Sequence[str]] = None,
    allow_none: bool = False,
) -> Optional[QueryAlgorithm]:
    """Constraint search for ``H.H -> Q0 -> P1 -> Q1 -> S.H.H`` on 4 amplitudes.

    ``P1`` ranges over permutation matrices, ``Q1`` over every variable
    assignment and ``S`` over signed permutations.  A candidate is accepted
    when every input of ``output_classes[j]`` ends in ``+-e_j``, and the sign
    at output 0 is +1 exactly on ``acc_plus`` (default: on all of class 0).
    Returns the first hit in lexicographic order, or None.
    """
    m = 4
    if len(output_classes) != m:
        raise ValueError("need one class per output")
    xs = all_inputs(n)
    owner = np.full(len(xs), -1)
    for j, cls in enumerate(output_classes):
        mask = cls.bits.astype(bool)
        if np.any(owner[mask] >= 0):
            raise ValueError("output classes overlap")
        owner[mask] = j
    if np.any(owner < 0):
        raise ValueError("output classes do not cover every input")
    if acc_plus is None:
        plus = output_classes[0].bits.astype(bool)
    else:
        plus = TruthTable.from_accepting(n, acc_plus).bits.astype(bool)
    cls0 = output_classes[0].bits.astype(bool)

    q0 = QueryStep(tuple(first_query)).signs(xs)
    after_q0 = 0.5 * q0
    choices = list(range(1, n + 1)) + ([None] if allow_none else [])
    chars = _characters(m)
    for perm in itertools.permutations(range(m)):
        p1 = permutation_matrix(perm)
        moved = after_q0 @ p1.T
        for q1 in itertools.product(choices, repeat=m):
            pre = moved * QueryStep(q1).signs(xs)
            # pre is +-(character)/2 iff H.H sends it to a signed basis state
            overlap = 2.0 * pre @ chars.T / m
            hit = np.abs(overlap) > 1 - 1e-9
            if not np.all(hit.sum(axis=1) == 1):
                continue
            reached = hit.argmax(axis=1)
            # every class must land on a single basis state, distinct per class
            target = {}
            ok = True
            for j in range(m):
                r = np.unique(reached[owner == j])
                if r.size != 1 or r[0] in target.values():
                    ok = False
                    break
                target[j] = int(r[0])
            if not ok:
                continue
            sign0 = np.sign(overlap[np.arange(len(xs)), reached].real)
            s = sign0[cls0]
            want = np.where(plus[cls0], 1.0, -1.0)
            if np.array_equal(s, want):
                flip = 1.0
            elif np.array_equal(-s, want):
                flip = -1.0
            else:
                continue
            out = [0] * m
            for j, r in target.items():
                out[r] = j
            u2 = permutation_matrix(out) @ hadamard_tensor(2)
            u2[0] *= flip
            return QueryAlgorithm(
                n=n, m=m, initial=basis_state(m),
                steps=(UnitaryStep(hadamard_tensor(2)), QueryStep(tuple(first_query)),
                       UnitaryStep(p1), QueryStep(q1), UnitaryStep(u2)),
                measurement=(1, 0, 0, 0), name="search")
    return None


def reconstruct_equality3() -> Optional[QueryAlgorithm]:
    """Re-run the gate search that produced :func:`build_equality3`."""
    from .boolfn import EQUALITY3
    classes = [EQUALITY3] + [TruthTable.from_accepting(3, a) for a in
                             (["011", "100"], ["010", "101"], ["001", "110"])]
    return search_two_query(3, classes, _EQ3_Q0)


def reconstruct_string_eq4() -> Optional[QueryAlgorithm]:
    """Re-run the gate search that produced :func:`build_string_eq4`."""
    xs = all_inputs(4)
    cls = [[], [], [], []]
    for row in xs:
        a, b = row[0] ^ row[2], row[1] ^ row[3]
        cls[2 * a + b].append("".join(map(str, row)))
    classes = [TruthTable.from_accepting(4, c) for c in cls]
    return search_two_query(4, classes, _SEQ4_Q0, acc_plus=["0000", "1111"])


def exact_query_matrix(n: int) -> list[list[int]]:
    """4 x n matrix of 1-based variable numbers for the exact T_2n algorithm.

    Variables ``x1..xn`` are numbered ``1..n`` and ``y1..yn`` are ``n+1..2n``.
    Column ``c`` is the ``c``-th query; row ``r`` feeds amplitude ``r``.
    """
    if n < 2:
        raise ValueError("T_2n needs n >= 2")
    x = lambda i: i
    y = lambda i: n + i
    if n % 2 == 0:
        h = n // 2
        lo, hi = range(1, h + 1), range(h + 1, n + 1)
        rows = [
            [x(i) for i in lo] + [y(i) for i in lo],
            [x(i) for i in hi] + [y(i) for i in hi],
            [y(i) for i in lo] + [x(i) for i in lo],
            [y(i) for i in hi] + [x(i) for i in hi],
        ]
    else:
        h = n // 2
        rows = [
            [x(i) for i in range(1, h + 2)] + [y(i) for i in range(1, h + 1)],
            [x(i) for i in range(h + 1, n + 1)] + [y(i) for i in range(h + 2, n + 1)],
            [y(i) for i in range(1, h + 2)] + [x(i) for i in range(1, h + 1)],
            [y(i) for i in range(h + 1, n + 1)] + [x(i) for i in range(h + 2, n + 1)],
        ]
    return rows


def bounded_query_matrix(n: int) -> list[list[int]]:
    """4 x ceil(n/2) query matrix of the bounded-error T_2n algorithm.

    Rows are x1.., ..xn, y1.., ..yn; for odd n the middle index starts row 2
    as well as ending row 1 (likewise for y).
    """
    if n < 2:
        raise ValueError("T_2n needs n >= 2")
    c = (n + 1) // 2
    first = range(1, c + 1)
    last = range(n - c + 1, n + 1)
    return [
        list(first),
        list(last),
        [n + i for i in first],
        [n + i for i in last],
    ]


def _columns(rows: list[list[int]]) -> list[tuple[int, ...]]:
    return [tuple(col) for col in zip(*rows)]


def _from_query_matrix(n_vars, rows, measurement, name):
    h = hadamard_tensor(2)
    steps = [UnitaryStep(h)] + [QueryStep(c) for c in _columns(rows)] + [UnitaryStep(h)]
    return QueryAlgorithm(n=n_vars, m=4, initial=basis_state(4), steps=tuple(steps),
                          measurement=measurement, name=name)


def build_t2n_exact(n: int) -> QueryAlgorithm:
    """Exact n-query algorithm on 2n variables.

    The measurement marks the basis state reached from the all-zero input;
    every input ends in a signed basis state, so this assignment is exact.
    """
    rows = exact_query_matrix(n)
    probe = _from_query_matrix(2 * n, rows, (1, 0, 0, 0), f"t2n-exact:{n}")
    zero = run_all(probe, np.zeros((1, 2 * n), dtype=np.uint8))[0]
    hit = int(np.argmax(np.abs(zero)))
    meas = tuple(int(i == hit) for i in range(4))
    return probe.replace(measurement=meas)


def build_t2n_bounded(n: int) -> QueryAlgorithm:
    """ceil(n/2)-query algorithm on 2n variables, accepting on output 0."""
    return _from_query_matrix(2 * n, bounded_query_matrix(n), (1, 0, 0, 0),
                              f"t2n-bounded:{n}")


CATALOG = {
    "equality3": (build_equality3, False),
    "string-eq4": (build_string_eq4, False),
    "t2n-exact": (build_t2n_exact, True),
    "t2n-bounded": (build_t2n_bounded, True),
}


def catalog_names() -> list[str]:
    return list(CATALOG)


def build(name: str, n: Optional[int] = None) -> QueryAlgorithm:
    """Build a catalog algorithm by name; ``name:N`` is accepted for families."""
    if ":" in name:
        name, arg = name.split(":", 1)
        n = int(arg)
    try:
        ctor, takes_n = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; known: {', '.join(CATALOG)}") from None
    if takes_n:
        if n is None:
            raise StructureError(f"{name} needs a size parameter n")
        return ctor(n)
    return ctor()
