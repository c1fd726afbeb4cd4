"""Grow a family of exactly computable functions from one algorithm.

Moving the accepting output, flipping every output and relabelling the
queried variables each give a new algorithm at no extra query cost.

Run: python demos/02_transformations.py
"""

from qquery import (build_equality3, build_string_eq4, classify, deterministic_complexity,
                    derive_truth_table, invert_outputs, move_accept, permute_query_variables)
from qquery.state import format_bits
from qquery.tables import s4_family


def show(label, alg):
    table, p = derive_truth_table(alg)
    print(f"{label:<28} {format_bits(table.bits)}  D={deterministic_complexity(table)}"
          f"  Q={alg.query_count}  p={p:.0f}")


eq = build_equality3()
print(classify(eq).label())
show("EQUALITY3", eq)
for j in range(1, 4):
    show(f"accept moved to output {j + 1}", move_accept(eq, j))
show("inverted", invert_outputs(eq))

# STRING_EQ4 only satisfies Property 3: one accepting output, but the
# amplitude there is -1 on half the accepted inputs
seq = build_string_eq4()
pc = classify(seq)
print("\n", pc.label(), "Acc+", sorted(pc.acc_plus), "Acc-", sorted(pc.acc_minus))
show("STRING_EQ4 vars 2,4,1,3", permute_query_variables(seq, (2, 4, 1, 3)))

fam = s4_family()
print(f"\n4-variable family: {len(fam)} algorithms, "
      f"{len({m.table for m in fam})} distinct functions")
