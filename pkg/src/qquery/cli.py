"""Command-line front end: ``qquery <command> ...`` or ``python -m qquery``.

Amplitude positions and output indices are 1-based on the command line.
Exit status is 1 for precondition failures and 2 for unreadable files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import boolfn, catalog, document, tables
from .composers import compose_and_pair, compose_quad
from .state import (StructureError, UnitaryStep, all_inputs, format_bits,
                    outcome_probabilities, parse_bits, trace)
from .transforms import PreconditionError, invert_outputs, move_accept, permute_query_variables
from .verifier import derive_truth_table, verify, verify_against


class CliError(Exception):
    def __init__(self, message, code=1):
        super().__init__(message)
        self.code = code


def _fmt_amp(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return f"{re:.6g}"
    return f"{complex(re, im):.6g}"


def _fmt_state(v) -> str:
    return "(" + ", ".join(_fmt_amp(z) for z in v) + ")"


def resolve(spec: str, n=None):
    """Catalog name (``t2n-exact`` with ``--n`` or ``t2n-exact:3``) or a file path."""
    if spec in catalog.CATALOG or spec.split(":")[0] in catalog.CATALOG:
        try:
            return catalog.build(spec, n)
        except (StructureError, ValueError) as exc:
            raise CliError(str(exc)) from exc
    path = Path(spec)
    if path.exists():
        try:
            return document.load(path)
        except document.DocumentError as exc:
            raise CliError(f"{path}: {exc}", code=2) from exc
    raise CliError(f"unknown algorithm or file: {spec}")


def _algorithm(args):
    if getattr(args, "file", None):
        return resolve(args.file)
    if not getattr(args, "alg", None):
        raise CliError("give --alg NAME or --file PATH")
    return resolve(args.alg, args.n)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_catalog(args):
    lines = []
    for name, (_, takes_n) in catalog.CATALOG.items():
        lines.append(f"{name} --n N" if takes_n else name)
    lines.append("functions: " + ", ".join(boolfn.NAMED))
    _emit(args, "\n".join(lines))


def cmd_run(args):
    alg = _algorithm(args)
    bits = parse_bits(args.input, alg.n)
    states = trace(alg, bits)
    lines = []
    if args.trace:
        lines.append(f"start       {_fmt_state(states[0])}")
        for k, (step, st) in enumerate(zip(alg.steps, states[1:]), 1):
            kind = "U" if isinstance(step, UnitaryStep) else "Q"
            lines.append(f"{k:>2} {kind}        {_fmt_state(st)}")
    final = states[-1]
    p0, p1 = outcome_probabilities(final, alg.measurement)
    verdict = "ACCEPT" if p1 > 0.5 else "REJECT"
    lines.append(f"final       {_fmt_state(final)}")
    lines.append(f"p(0)={p0:.12g} p(1)={p1:.12g}  {verdict}")
    _emit(args, "\n".join(lines))


def cmd_derive(args):
    alg = _algorithm(args)
    table, p = derive_truth_table(alg)
    lines = [f"{format_bits(x)} {b}" for x, b in zip(all_inputs(alg.n), table.bits)]
    lines.append(f"min p(correct) = {p:.12g}")
    _emit(args, "\n".join(lines))


def cmd_verify(args):
    alg = _algorithm(args)
    if args.function:
        try:
            f = boolfn.named_function(args.function)
        except KeyError as exc:
            raise CliError(str(exc)) from exc
        if f.n != alg.n:
            raise CliError(f"function {args.function} has n={f.n}, algorithm n={alg.n}")
        rep = verify_against(alg, f)
    else:
        rep = verify(alg)
    if args.json:
        _emit(args, json.dumps(rep.to_dict(), indent=2, sort_keys=True))
    else:
        _emit(args, rep.format_text())


def _save_or_print(args, alg):
    text = document.dumps(alg)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_transform(args):
    alg = _algorithm(args)
    if args.method == "invert":
        out = invert_outputs(alg)
    elif args.method == "move-accept":
        if args.to is None:
            raise CliError("move-accept needs --to J")
        out = move_accept(alg, args.to - 1)
    else:
        if not args.sigma:
            raise CliError("permute-vars needs --sigma")
        sigma = [int(s) for s in args.sigma.split(",")]
        out = permute_query_variables(alg, sigma)
    _save_or_print(args, out)


def cmd_compose(args):
    if args.method == "and-pair":
        out = compose_and_pair(resolve(args.a), resolve(args.b))
    else:
        out = compose_quad(resolve(args.a), resolve(args.b), resolve(args.c), resolve(args.d))
    _save_or_print(args, out)


def cmd_report(args):
    lines = []
    tables.render_all(lines.append)
    _emit(args, "\n".join(lines))


def cmd_save(args):
    alg = _algorithm(args)
    document.save(alg, args.out)


def cmd_load(args):
    try:
        alg = document.load(args.path)
    except document.DocumentError as exc:
        raise CliError(f"{args.path}: {exc}", code=2) from exc
    except OSError as exc:
        raise CliError(str(exc), code=2) from exc
    print(f"{alg.name or '(unnamed)'}: n={alg.n} m={alg.m} steps={len(alg.steps)} "
          f"queries={alg.query_count} measurement={format_bits(alg.measurement)}")


def _alg_args(p):
    p.add_argument("--alg", help="catalog name, e.g. equality3 or t2n-exact")
    p.add_argument("--n", type=int, help="size parameter for the T_2n families")
    p.add_argument("--file", help="algorithm document to load instead of --alg")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qquery", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog algorithms")
    p.add_argument("action", choices=["list"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("run", help="run one input")
    _alg_args(p)
    p.add_argument("--input", required=True, help="bits x1..xn, e.g. 011")
    p.add_argument("--trace", action="store_true", help="print the state after every step")
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("derive", help="print the computed truth table")
    _alg_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("verify", help="exhaustive verification report")
    _alg_args(p)
    p.add_argument("--function", help="named target function, e.g. EQUALITY3")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="apply a transformation method")
    p.add_argument("method", choices=["invert", "move-accept", "permute-vars"])
    _alg_args(p)
    p.add_argument("--to", type=int, help="1-based output for move-accept")
    p.add_argument("--sigma", help='comma list s(1),...,s(n), e.g. "2,4,1,3"')
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("compose", help="compose algorithms in parallel")
    p.add_argument("method", choices=["and-pair", "quad"])
    for name in "abcd":
        p.add_argument(f"--{name}", help="catalog name (NAME or NAME:N) or document path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("report", help="regenerate the result tables")
    p.add_argument("what", choices=["tables"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("save", help="write an algorithm document")
    _alg_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_save)

    p = sub.add_parser("load", help="read and summarise an algorithm document")
    p.add_argument("path")
    p.set_defaults(func=cmd_load)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compose":
        need = "ab" if args.method == "and-pair" else "abcd"
        missing = [f"--{c}" for c in need if getattr(args, c) is None]
        if missing:
            print(f"error: compose {args.method} needs {' '.join(missing)}", file=sys.stderr)
            return 1
    try:
        args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 1
    except (StructureError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
