"""Regenerate function families and probability breakdowns from the catalog."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence


from . import boolfn
from .boolfn import TruthTable, deterministic_complexity
from .catalog import build_equality3, build_string_eq4, build_t2n_bounded, build_t2n_exact
from .composers import compose_and_pair, compose_quad
from .state import QueryAlgorithm, all_inputs, accept_probabilities, format_bits, run_all
from .transforms import classify, invert_outputs, move_accept, permute_query_variables
from .verifier import derive_truth_table, gap_report, nice_fraction

# variable permutations that, together with output moves, span the 4-variable family
S4_SIGMAS = ((1, 3, 2, 4), (3, 1, 2, 4))

# accepted inputs as printed for the STRING_EQ4 pair composition (one entry repeated)
PRINTED_STRING_EQ_PAIR = (
    "00000000", "00001111", "11110000", "11111111",
    "01010101", "01011010", "10101010", "10101010",
)


@dataclass
class FamilyMember:
    label: str
    method: str
    algorithm: QueryAlgorithm
    table: TruthTable
    min_correct: float
    depth: int

    @property
    def column(self) -> str:
        return format_bits(self.table.bits)


def _member(label, method, alg):
    table, p = derive_truth_table(alg)
    return FamilyMember(label, method, alg, table, p, deterministic_complexity(table))


def _placements(alg, method, prefix=""):
    out = []
    for j in range(alg.m):
        moved = alg if j == alg.accepting_outputs[0] else move_accept(alg, j)
        out.append(_member(prefix + format_bits(moved.measurement), method, moved))
    return out


def s3_family() -> list[FamilyMember]:
    """Four output placements of the EQUALITY3 algorithm and their inversions."""
    base = _placements(build_equality3(), "placement")
    inv = [_member(format_bits(invert_outputs(m.algorithm).measurement), "inversion",
                   invert_outputs(m.algorithm)) for m in base]
    return base + inv


def s4_family() -> list[FamilyMember]:
    """Placements of STRING_EQ4, of two variable relabellings, and all inversions."""
    alg = build_string_eq4()
    base = _placements(alg, "placement")
    for sig in S4_SIGMAS:
        relabelled = permute_query_variables(alg, sig)
        tag = "".join(map(str, sig))
        base += _placements(relabelled, f"vars {tag} + placement", prefix=f"[{tag}] ")
    inv = [_member("not " + m.label, "inversion", invert_outputs(m.algorithm)) for m in base]
    return base + inv


def variable_orbit(members: Sequence[FamilyMember]) -> set[TruthTable]:
    """Tables reached by applying every variable permutation to every member."""
    out = set()
    for mem in members:
        for sig in itertools.permutations(range(1, mem.algorithm.n + 1)):
            out.add(derive_truth_table(permute_query_variables(mem.algorithm, sig))[0])
    return out


@dataclass
class CaseRow:
    label: str
    inputs: int
    p_accept: tuple
    acc_amplitudes: tuple


def _block_values(tables, x):
    off, vals = 0, []
    for t in tables:
        vals.append(int(t.bits[boolfn.index_of(x[off:off + t.n])]))
        off += t.n
    return vals


def pair_cases(a1: QueryAlgorithm, a2: QueryAlgorithm) -> list[CaseRow]:
    """Group every input of the pair composition by what each block does.

    For inputs where both blocks accept, the group is split by whether the
    blocks' accepting amplitudes agree in sign.
    """
    comp = compose_and_pair(a1, a2)
    c1, c2 = classify(a1), classify(a2)
    f1, f2 = derive_truth_table(a1)[0], derive_truth_table(a2)[0]
    xs = all_inputs(comp.n)
    p = accept_probabilities(comp)
    before = run_all(comp.replace(steps=comp.steps[:-1]), xs)
    final = run_all(comp, xs)
    m = comp.m // 2
    k1, k2 = c1.accepting_output, m + c2.accepting_output
    k0 = comp.accepting_outputs[0]
    groups: dict = {}
    for i, x in enumerate(xs):
        v1, v2 = _block_values([f1, f2], x)
        key = f"{v1} {v2}"
        if v1 and v2:
            s1 = format_bits(x[:a1.n]) in c1.acc_plus
            s2 = format_bits(x[a1.n:]) in c2.acc_plus
            key += " same sign" if s1 == s2 else " opposite sign"
        g = groups.setdefault(key, [0, set(), set()])
        g[0] += 1
        g[1].add(nice_fraction(float(p[i])))
        g[2].add((_amp(before[i, k1]), _amp(before[i, k2]), _amp(final[i, k0])))
    rows = [CaseRow(k, g[0], tuple(sorted(g[1])), tuple(sorted(g[2])))
            for k, g in groups.items()]
    order = ["0 0", "0 1", "1 0", "1 1", "1 1 opposite sign", "1 1 same sign"]
    return sorted(rows, key=lambda r: order.index(r.label))


def _amp(z: complex) -> str:
    r = round(float(z.real), 9) + 0.0
    for v, name in ((0.0, "0"), (0.5, "1/2"), (-0.5, "-1/2"), (1.0, "1"), (-1.0, "-1"),
                    (2 ** -0.5, "1/sqrt2"), (-(2 ** -0.5), "-1/sqrt2")):
        if abs(r - v) < 1e-9:
            return name
    return f"{r:.6g}"


def quad_cases(algs: Sequence[QueryAlgorithm]) -> list[CaseRow]:
    """p("1") of the four-block composition grouped by how many blocks accept."""
    comp = compose_quad(*algs)
    tables = [derive_truth_table(a)[0] for a in algs]
    xs = all_inputs(comp.n)
    p = accept_probabilities(comp)
    groups: dict = {}
    for i, x in enumerate(xs):
        k = sum(_block_values(tables, x))
        g = groups.setdefault(k, [0, set()])
        g[0] += 1
        g[1].add(nice_fraction(float(p[i])))
    return [CaseRow(f"{k} accept", g[0], tuple(sorted(g[1])), ()) for k, g in sorted(groups.items())]


def string_pair_accept_check() -> dict:
    """Compare the simulated accept set of the STRING_EQ4 pair with the printed list."""
    alg = build_string_eq4()
    derived = derive_truth_table(compose_and_pair(alg, alg))[0].accepting()
    printed = set(PRINTED_STRING_EQ_PAIR)
    dupes = sorted({x for x in PRINTED_STRING_EQ_PAIR if PRINTED_STRING_EQ_PAIR.count(x) > 1})
    return {
        "derived": sorted(derived),
        "printed_distinct": sorted(printed),
        "missing_from_printed": sorted(derived - printed),
        "extra_in_printed": sorted(printed - derived),
        "duplicates_in_printed": dupes,
        "equal": derived == printed,
    }


def gap_algorithms() -> list[QueryAlgorithm]:
    e, s = build_equality3(), build_string_eq4()
    return [e, s, build_t2n_exact(2), build_t2n_exact(3), build_t2n_bounded(3),
            compose_and_pair(e, e), compose_and_pair(s, s), compose_quad(e, e, e, e)]


def _family_text(title, members, xs_n):
    xs = [format_bits(x) for x in all_inputs(xs_n)]
    width = max(len(m.label) for m in members)
    lines = [title]
    lines.append("input".ljust(xs_n + 2) + " ".join(m.label.rjust(width) for m in members))
    for i, x in enumerate(xs):
        lines.append(x.ljust(xs_n + 2) + " ".join(str(m.table.bits[i]).rjust(width) for m in members))
    lines.append("D(f)".ljust(xs_n + 2) + " ".join(str(m.depth).rjust(width) for m in members))
    lines.append("Q".ljust(xs_n + 2) + " ".join(str(m.algorithm.query_count).rjust(width) for m in members))
    return "\n".join(lines)


def _cases_text(title, rows):
    lines = [title, f"{'case':<20} {'inputs':>6}  {'acc amplitudes (block1, block2 -> final)':<44} p(1)"]
    for r in rows:
        amps = "; ".join(f"({a}, {b} -> {c})" for a, b, c in r.acc_amplitudes) if r.acc_amplitudes else ""
        lines.append(f"{r.label:<20} {r.inputs:>6}  {amps:<44} {', '.join(r.p_accept)}")
    return "\n".join(lines)


def render_all(out: Callable[[str], None] = print) -> None:
    e = build_equality3()
    placements = _placements(e, "placement")
    out("Output placements of the EQUALITY3 algorithm")
    for m in placements:
        acc = sorted(m.table.accepting())
        out(f"  QM={m.label}  accepts {{{', '.join(acc)}}}")
    out("")
    out(_family_text("3-variable family from EQUALITY3 (placements, then inversions)",
                     s3_family(), 3))
    fam = s4_family()
    out("")
    out(_family_text("4-variable family from STRING_EQ4 (12 base columns)", fam[:12], 4))
    out(f"  plus {len(fam) - 12} inversions; distinct tables: {len({m.table for m in fam})}")
    out("")
    out(_cases_text("EQUALITY3 pair composition", pair_cases(e, e)))
    out("")
    s = build_string_eq4()
    out(_cases_text("STRING_EQ4 pair composition", pair_cases(s, s)))
    chk = string_pair_accept_check()
    out(f"  derived accept set ({len(chk['derived'])}): {', '.join(chk['derived'])}")
    out(f"  printed list: {len(PRINTED_STRING_EQ_PAIR)} entries, {len(chk['printed_distinct'])} distinct; "
        f"duplicates {chk['duplicates_in_printed']}, missing {chk['missing_from_printed']}")
    out("")
    out(_cases_text("EQUALITY3 four-block composition", quad_cases([e, e, e, e])))
    out("")
    out("Complexity gaps")
    for alg in gap_algorithms():
        out("  " + gap_report(alg).format_text())
