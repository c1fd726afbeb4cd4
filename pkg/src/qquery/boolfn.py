"""Boolean functions as truth tables, with sensitivity and decision-tree depth."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .state import all_inputs, format_bits, parse_bits

MAX_VARS = 20
EXACT_D_MAX_VARS = 12


class ExactUnavailable(ValueError):
    """Exact ``D(f)`` was requested for a function with too many variables."""


@dataclass(frozen=True, eq=False)
class TruthTable:
    """``bits[i]`` is f on the input whose big-endian reading (x1 first) is ``i``."""

    n: int
    bits: np.ndarray

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VARS:
            raise ValueError(f"n must be in 0..{MAX_VARS}, got {self.n}")
        b = np.asarray(self.bits, dtype=np.uint8).ravel()
        if b.size != 1 << self.n:
            raise ValueError(f"table for n={self.n} needs {1 << self.n} entries, got {b.size}")
        if np.any(b > 1):
            raise ValueError("truth table entries must be 0 or 1")
        b = b.copy()
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @classmethod
    def from_function(cls, n: int, fn: Callable[..., int]) -> "TruthTable":
        """Tabulate ``fn(x1, ..., xn)``."""
        xs = all_inputs(n)
        return cls(n, [int(bool(fn(*row))) for row in xs])

    @classmethod
    def from_accepting(cls, n: int, accepting: Iterable) -> "TruthTable":
        bits = np.zeros(1 << n, dtype=np.uint8)
        for x in accepting:
            bits[index_of(parse_bits(x, n))] = 1
        return cls(n, bits)

    def __call__(self, x) -> int:
        return int(self.bits[index_of(parse_bits(x, self.n))])

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self):
        return f"TruthTable(n={self.n}, bits='{format_bits(self.bits)}')"

    def accepting(self) -> frozenset[str]:
        xs = all_inputs(self.n)
        return frozenset(format_bits(xs[i]) for i in np.flatnonzero(self.bits))

    def weight(self) -> int:
        return int(self.bits.sum())

    def is_constant(self) -> bool:
        return bool(self.bits.min() == self.bits.max())


def index_of(bits: Sequence[int]) -> int:
    i = 0
    for b in bits:
        i = (i << 1) | int(b)
    return i


def sensitivity_profile(f: TruthTable) -> np.ndarray:
    """Per-input count of single-bit flips that change f."""
    idx = np.arange(1 << f.n)
    counts = np.zeros(1 << f.n, dtype=np.int64)
    for k in range(f.n):
        flipped = idx ^ (1 << (f.n - 1 - k))
        counts += f.bits != f.bits[flipped]
    return counts


def sensitivity(f: TruthTable) -> int:
    return int(sensitivity_profile(f).max(initial=0))


def accepting_sensitivity(f: TruthTable) -> int:
    """Largest sensitivity over accepting inputs; 0 when f never accepts."""
    prof = sensitivity_profile(f)
    acc = f.bits == 1
    return int(prof[acc].max()) if acc.any() else 0


def _restriction_ranges(f: TruthTable) -> tuple[np.ndarray, np.ndarray]:
    # Lattice of partial assignments: digit 0/1 fixes a variable, 2 leaves it free.
    n = f.n
    shape = (3,) * n
    lo = np.zeros(shape, dtype=np.uint8)
    hi = np.zeros(shape, dtype=np.uint8)
    full = (slice(0, 2),) * n
    lo[full] = f.bits.reshape((2,) * n)
    hi[full] = lo[full]
    for axis in range(n):
        s0, s1, s2 = ([slice(None)] * n for _ in range(3))
        s0[axis], s1[axis], s2[axis] = 0, 1, 2
        lo[tuple(s2)] = np.minimum(lo[tuple(s0)], lo[tuple(s1)])
        hi[tuple(s2)] = np.maximum(hi[tuple(s0)], hi[tuple(s1)])
    return lo, hi


def deterministic_complexity(f: TruthTable, max_vars: int = EXACT_D_MAX_VARS) -> int:
    """Exact decision-tree depth ``D(f)``.

    Minimax over adaptive decision trees, tabulated over all ``3**n`` partial
    assignments: a constant restriction costs 0, otherwise the best free
    variable costs ``1 + max`` over its two settings.
    """
    n = f.n
    if n > max_vars:
        raise ExactUnavailable(
            f"exact D(f) unavailable for n={n} > {max_vars}; use complexity_facts bounds")
    if n == 0:
        return 0
    lo, hi = _restriction_ranges(f)
    constant = lo == hi
    depth = np.zeros((3,) * n, dtype=np.int16)
    big = np.int16(n + 1)
    for _ in range(n):
        best = np.full((3,) * n, big, dtype=np.int16)
        for axis in range(n):
            s0, s1, s2 = ([slice(None)] * n for _ in range(3))
            s0[axis], s1[axis], s2[axis] = 0, 1, 2
            cand = 1 + np.maximum(depth[tuple(s0)], depth[tuple(s1)])
            best[tuple(s2)] = np.minimum(best[tuple(s2)], cand)
        new = np.where(constant, 0, best).astype(np.int16)
        if np.array_equal(new, depth):
            break
        depth = new
    return int(depth[(2,) * n])


@dataclass(frozen=True)
class ComplexityFacts:
    sensitivity: int
    accepting_sensitivity: int
    deterministic_exact: Optional[int]
    deterministic_lower: int
    deterministic_upper: int

    def describe(self) -> str:
        if self.deterministic_exact is not None:
            return f"D={self.deterministic_exact}"
        return f"D>={self.deterministic_lower} (s={self.sensitivity})"


def complexity_facts(f: TruthTable, max_vars: int = EXACT_D_MAX_VARS) -> ComplexityFacts:
    s = sensitivity(f)
    s1 = accepting_sensitivity(f)
    if f.n <= max_vars:
        d = deterministic_complexity(f, max_vars)
        return ComplexityFacts(s, s1, d, d, d)
    return ComplexityFacts(s, s1, None, s, f.n)


def complement(f: TruthTable) -> TruthTable:
    return TruthTable(f.n, 1 - f.bits)


def and_compose(f1: TruthTable, f2: TruthTable) -> TruthTable:
    """``F(X1 X2) = f1(X1) and f2(X2)`` on ``n1 + n2`` variables."""
    return TruthTable(f1.n + f2.n, np.outer(f1.bits, f2.bits).ravel())


def check_permutation(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based permutation of ``1..n`` given as ``(s(1), ..., s(n))``."""
    sig = tuple(int(s) for s in sigma)
    if sorted(sig) != list(range(1, n + 1)):
        raise ValueError(f"{sig} is not a permutation of 1..{n}")
    return sig


def permute_variables(f: TruthTable, sigma: Sequence[int]) -> TruthTable:
    """``g(x1..xn) = f(x_s(1), ..., x_s(n))``."""
    sig = check_permutation(sigma, f.n)
    xs = all_inputs(f.n)
    moved = xs[:, [s - 1 for s in sig]]
    weights = 1 << np.arange(f.n - 1, -1, -1)
    return TruthTable(f.n, f.bits[moved @ weights])


def _xor(a, b):
    return a ^ b


EQUALITY3 = TruthTable.from_function(3, lambda x1, x2, x3: (not _xor(x1, x2)) and not _xor(x2, x3))
STRING_EQ4 = TruthTable.from_function(4, lambda x1, x2, x3, x4: not (_xor(x1, x3) or _xor(x2, x4)))
T4 = TruthTable.from_accepting(4, ["0000", "0011", "0101", "0110", "1001", "1010", "1100", "1111"])
T6_EXACT = TruthTable.from_accepting(6, [
    "000000", "000101", "001001", "001100",
    "010010", "010111", "011011", "011110",
    "100001", "100100", "101000", "101101",
    "110011", "110110", "111010", "111111",
])
T6_BOUNDED = TruthTable.from_accepting(6, [
    "000000", "000111", "010010", "010101",
    "101010", "101101", "111000", "111111",
])

NAMED = {
    "EQUALITY3": EQUALITY3,
    "STRING_EQ4": STRING_EQ4,
    "T4": T4,
    "T6_EXACT": T6_EXACT,
    "T6_BOUNDED": T6_BOUNDED,
}


def named_function(name: str) -> TruthTable:
    try:
        return NAMED[name.upper().replace("-", "_")]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; known: {', '.join(NAMED)}") from None
