"""Walk the two-query EQUALITY3 algorithm through a few inputs.

Run: python demos/01_equality_walkthrough.py
"""

import numpy as np

from qquery import build_equality3, outcome_probabilities
from qquery.state import all_inputs, run_all, trace

np.set_printoptions(precision=3, suppress=True)

alg = build_equality3()
print(alg.name, "n =", alg.n, "queries =", alg.query_count)

# the state after every step, for an accepted and a rejected input
for x in ("111", "011"):
    print("\ninput", x)
    for k, st in enumerate(trace(alg, x)):
        print(f"  after step {k}:", st.real)
    p0, p1 = outcome_probabilities(trace(alg, x)[-1], alg.measurement)
    print(f"  p(0) = {p0:.3f}  p(1) = {p1:.3f}")

# every input lands on a single basis state, so the answer is certain
states = run_all(alg)
for x, st in zip(all_inputs(3), states):
    k = int(np.argmax(np.abs(st)))
    print("".join(map(str, x)), "-> output", k + 1, "amplitude", round(st[k].real, 9))
