"""The exact and bounded-error T_2n families for growing n.

The exact algorithm spends n queries on 2n variables; the bounded one
spends ceil(n/2) and accepts with certainty but rejects with p >= 3/4.

Run: python demos/04_t2n_families.py
"""

import time

import numpy as np

from qquery import build_t2n_bounded, build_t2n_exact, check_lemma1, verify
from qquery.state import accept_probabilities

print(" n  inputs  exact Q  lemma1  bounded Q  p(0) on rejects      seconds")
for n in range(2, 9):
    t = time.perf_counter()
    ex = build_t2n_exact(n)
    bd = build_t2n_bounded(n)
    assert verify(ex, per_input=False, exact_limit=0).classification.value == "EXACT"
    p1 = accept_probabilities(bd)
    rej = np.round(1 - p1[p1 < 0.5], 9)
    vals = sorted(set(rej.tolist()))
    print(f"{n:>2}  {2 ** (2 * n):>6}  {ex.query_count:>7}  {str(check_lemma1(n)):>6}"
          f"  {bd.query_count:>9}  {str(vals):<18}  {time.perf_counter() - t:.3f}")
