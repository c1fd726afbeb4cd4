"""Compose exact algorithms in parallel and look at the complexity gaps.

Run: python demos/03_composition_gaps.py
"""

import numpy as np

from qquery import (build_equality3, build_string_eq4, compose_and_pair, compose_quad,
                    gap_report)
from qquery.state import accept_probabilities
from qquery.verifier import nice_fraction

eq, seq = build_equality3(), build_string_eq4()

pair = compose_and_pair(eq, eq)
print(pair.name, "dim", pair.m, "queries", pair.query_count)
print(" ", pair.notes)
# p(1) takes only three values: neither block accepts, one does, both do
vals, counts = np.unique(np.round(accept_probabilities(pair), 9), return_counts=True)
print("  p(1) histogram:", {nice_fraction(v): int(c) for v, c in zip(vals, counts)})

# with Property 3 blocks, opposite signs cancel in the final gate
pair2 = compose_and_pair(seq, seq)
print("\n" + pair2.name)
print(" ", pair2.notes)

quad = compose_quad(eq, eq, eq, eq)
print("\n" + quad.name, "dim", quad.m, "inputs", 2 ** quad.n)
vals, counts = np.unique(np.round(accept_probabilities(quad), 9), return_counts=True)
print("  p(1) histogram:", {nice_fraction(v): int(c) for v, c in zip(vals, counts)})

print()
for alg in (eq, seq, pair, pair2, quad):
    print(gap_report(alg).format_text())
