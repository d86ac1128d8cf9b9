"""Command-line verification harness.

Subcommands: axioms (registry laws), theorems (named suites), fold,
decompose, render.  Reports are deterministic for a fixed seed and config:
stdout carries only the canonical report (text, json or tap); timing goes
to stderr.  Exit codes: 0 all checks pass, 1 at least one check fails,
2 configuration or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import arrays, fillers, folding, models, shells, suites
from .core import LawReport, MINUS, PLUS, run_axiom_suite, LAWS
from .errors import CubicalError, NotThin, ParseError, UnknownLaw

FAMILIES = ("nerve", "tower", "broken")


def build_system(family: str, cat_spec: str, max_dim: int, base_dim: int = 1):
    if os.path.exists(cat_spec):
        cat = models.load_fincat_path(cat_spec)
    else:
        cat = models.bundled_category(cat_spec)
    if family == "nerve":
        return models.nerve(cat, max_dim)
    if family == "broken":
        return models.BrokenNerveSystem(cat, max_dim)
    if family == "tower":
        if base_dim >= max_dim:
            raise ParseError("tower needs base dimension below the checked dimension")
        system = models.nerve(cat, base_dim)
        for top in range(base_dim + 1, max_dim + 1):
            system = shells.ShellExtension(system, top)
        return system
    raise ParseError(f"unknown model family {family!r}")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# report formatting


def _emit_reports(command: str, config: dict, reports: list[LawReport], fmt: str) -> int:
    passed = all(r.passed for r in reports)
    if fmt == "json":
        doc = {
            "command": command,
            "config": config,
            "results": [r.as_dict() for r in reports],
            "passed": passed,
        }
        print(_dump(doc))
    elif fmt == "tap":
        print("TAP version 13")
        print(f"1..{len(reports)}")
        for idx, r in enumerate(reports, 1):
            if r.passed:
                print(f"ok {idx} - {r.law_id} ({r.instances} instances)")
            else:
                print(f"not ok {idx} - {r.law_id}")
                print("  ---")
                for line in _dump({"counterexample": r.counterexample}).splitlines():
                    print(f"  {line}")
                print("  ...")
    else:
        for r in reports:
            if r.passed:
                print(f"PASS {r.law_id} ({r.instances} instances)")
            else:
                print(f"FAIL {r.law_id} ({r.instances} instances)")
                for line in _dump(r.counterexample).splitlines():
                    print(f"    {line}")
        print(f"{'all passed' if passed else 'FAILURES PRESENT'} "
              f"({sum(r.instances for r in reports)} instances over {len(reports)} checks)")
    return 0 if passed else 1


def _config_dict(args, extra=None) -> dict:
    config = {
        "model": args.model,
        "cat": args.cat,
        "dim": args.dim,
        "exhaustive_dim": getattr(args, "exhaustive_dim", None),
        "samples": getattr(args, "samples", None),
        "seed": getattr(args, "seed", None),
    }
    if getattr(args, "base_dim", 1) != 1:
        config["base_dim"] = args.base_dim
    if extra:
        config.update(extra)
    return config


# ---------------------------------------------------------------------------
# subcommands


def cmd_axioms(args) -> int:
    system = build_system(args.model, args.cat, args.dim, args.base_dim)
    reports = run_axiom_suite(
        system,
        max_dim=args.dim,
        exhaustive_dim=args.exhaustive_dim,
        samples=args.samples,
        seed=args.seed,
        law_ids=args.law or None,
    )
    return _emit_reports("axioms", _config_dict(args, {"laws": args.law or "all"}),
                         reports, args.format)


def cmd_theorems(args) -> int:
    system = build_system(args.model, args.cat, args.dim, args.base_dim)
    config = suites.SuiteConfig(
        max_dim=args.dim,
        exhaustive_dim=args.exhaustive_dim,
        samples=args.samples,
        seed=args.seed,
    )
    reports = suites.run_suites(system, args.name or None, config)
    return _emit_reports("theorems", _config_dict(args, {"names": args.name or "all"}),
                         reports, args.format)


def cmd_fold(args) -> int:
    system = build_system(args.model, args.cat, args.dim, args.base_dim)
    x = system.parse(_read_json(args.cube))
    n = system.dim(x)
    steps = []
    current = x
    for j in range(n - 1, 0, -1):
        current = folding.psi(system, current, j)
        steps.append({"direction": j, "result": system.describe(current)})
    result = folding.big_psi(system, x)
    doc = {
        "input": system.describe(x),
        "steps": steps,
        "folded": system.describe(result.folded),
        "n": system.describe(result.n_face),
        "p": system.describe(result.p_face),
        "thin": folding.is_thin(system, x),
    }
    if args.format == "json":
        print(_dump(doc))
    else:
        print(f"dimension: {n}")
        print(f"thin: {str(doc['thin']).lower()}")
        print(f"N: {json.dumps(doc['n'], sort_keys=True)}")
        print(f"P: {json.dumps(doc['p'], sort_keys=True)}")
        for step in steps:
            print(f"after folding direction {step['direction']}: "
                  f"{json.dumps(step['result'], sort_keys=True)}")
    return 0


def _expression_tree(doc, indent: str = "") -> str:
    kind = doc["kind"]
    if kind == "compose":
        own = f"{indent}compose dir={doc['dir']}\n"
        return (own + _expression_tree(doc["left"], indent + "  ")
                + _expression_tree(doc["right"], indent + "  "))
    if kind == "eps":
        return f"{indent}eps dir={doc['dir']}\n"
    if kind == "gamma":
        return f"{indent}gamma dir={doc['dir']} sign={doc['sign']}\n"
    return f"{indent}base\n"


def cmd_decompose(args) -> int:
    system = build_system(args.model, args.cat, args.dim, args.base_dim)
    x = system.parse(_read_json(args.cube))
    try:
        expr = fillers.thin_decompose(system, x)
    except NotThin as exc:
        print(f"not thin: {exc}", file=sys.stderr)
        return 1
    doc = fillers.expression_to_doc(system, expr)
    out = {"input": system.describe(x), "expression": doc}
    if args.render:
        out["rendering"] = _expression_tree(doc)
    if args.format == "json":
        print(_dump(out))
    else:
        print(_dump(doc))
        if args.render:
            print(_expression_tree(doc), end="")
    return 0


def cmd_render(args) -> int:
    system = build_system(args.model, args.cat, args.dim, args.base_dim)
    doc = _read_json(args.cube)
    if args.kind == "transport":
        if not isinstance(doc, list) or len(doc) != 2:
            raise ParseError("transport rendering needs a two-element list of cubes")
        a, b = system.parse(doc[0]), system.parse(doc[1])
        i = args.dir
        arr = arrays.ComposableArray(system, [
            [system.connection(a, i, PLUS), system.degeneracy(a, i + 1)],
            [system.degeneracy(a, i), system.connection(b, i, PLUS)],
        ], dir_v=i, dir_h=i + 1, kinds=[["G+a", "e'a"], ["ea", "G+b"]])
        print(arrays.render_ascii(arr), end="")
        return 0
    x = system.parse(doc)
    n = system.dim(x)
    j = args.dir
    if args.kind == "psi":
        grid = [[
            arrays.SymbolicCell(arrays.GAMMA_PLUS),
            arrays.SymbolicCell.plain(x, "x"),
            arrays.SymbolicCell(arrays.GAMMA_MINUS),
        ]]
        resolved = arrays.resolve_symbols(system, grid, dir_v=j, dir_h=j + 1)
        print(arrays.render_ascii(resolved), end="")
    elif args.kind == "identity":
        grid = [
            [arrays.SymbolicCell.plain(x, "x"), arrays.SymbolicCell(arrays.EPS_H)],
            [arrays.SymbolicCell(arrays.EPS_V), arrays.SymbolicCell(arrays.DOUBLE)],
        ]
        resolved = arrays.resolve_symbols(system, grid, dir_v=j, dir_h=j + 1)
        print(arrays.render_ascii(resolved), end="")
    else:  # unfold
        if not 1 <= j <= n - 1:
            raise ParseError(f"--dir must be between 1 and {n - 1} for unfold")
        s = shells.boundary(system, x)
        a = folding.psi(system, x, j)
        p = arrays.ComposablePartition(system, [
            arrays.PartitionCell(0, 0, 1, 1, system.degeneracy(s.face(j, MINUS), j), "e-"),
            arrays.PartitionCell(0, 1, 1, 2,
                                 system.connection(s.face(j + 1, PLUS), j, PLUS), "G+"),
            arrays.PartitionCell(1, 0, 2, 2, a, "fold"),
            arrays.PartitionCell(2, 0, 3, 1,
                                 system.connection(s.face(j + 1, MINUS), j, MINUS), "G-"),
            arrays.PartitionCell(2, 1, 3, 2, system.degeneracy(s.face(j, PLUS), j), "e+"),
        ], dir_v=j, dir_h=j + 1)
        print(arrays.render_ascii(p), end="")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_model_args(sub, with_report_args: bool = True) -> None:
    sub.add_argument("--model", choices=FAMILIES, default="nerve",
                     help="model family (broken is the negative-control fixture)")
    sub.add_argument("--cat", required=True,
                     help="category document path, or a bundled name: "
                          + ", ".join(models.BUNDLED))
    sub.add_argument("--dim", type=int, default=4, help="top checked dimension")
    sub.add_argument("--base-dim", type=int, default=1,
                     help="tower base dimension (tower model only)")
    if with_report_args:
        sub.add_argument("--samples", type=int, default=500,
                         help="seeded sample count above the exhaustive cap")
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--exhaustive-dim", type=int, default=3,
                         help="check exhaustively up to this dimension")
        sub.add_argument("--format", choices=("text", "json", "tap"), default="text")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubecat",
        description="verify cubical-category laws over finite models",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    axioms = commands.add_parser("axioms", help="run registry laws")
    _add_model_args(axioms)
    axioms.add_argument("--law", action="append", metavar="ID",
                        help="restrict to one or more law ids (repeatable); "
                             "known: " + ", ".join(l.law_id for l in LAWS))
    axioms.set_defaults(func=cmd_axioms)

    theorems = commands.add_parser("theorems", help="run named theorem suites")
    _add_model_args(theorems)
    theorems.add_argument("--name", action="append", metavar="SUITE",
                          help="restrict to one or more suites (repeatable); "
                               "known: " + ", ".join(s.suite_id for s in suites.SUITES))
    theorems.set_defaults(func=cmd_theorems)

    fold = commands.add_parser("fold", help="fold a cube and report N, P, thinness")
    _add_model_args(fold, with_report_args=False)
    fold.add_argument("--format", choices=("text", "json"), default="text")
    fold.add_argument("cube", help="cube document path, or - for stdin")
    fold.set_defaults(func=cmd_fold)

    decomp = commands.add_parser(
        "decompose", help="write a thin cube as degeneracies and connections"
    )
    _add_model_args(decomp, with_report_args=False)
    decomp.add_argument("--format", choices=("text", "json"), default="text")
    decomp.add_argument("--render", action="store_true",
                        help="also print the expression tree")
    decomp.add_argument("cube", help="cube document path, or - for stdin")
    decomp.set_defaults(func=cmd_decompose)

    render = commands.add_parser("render", help="draw folding diagrams for a cube")
    _add_model_args(render, with_report_args=False)
    render.add_argument("--kind", choices=("psi", "unfold", "identity", "transport"),
                        default="psi")
    render.add_argument("--dir", type=int, default=1, help="folding direction")
    render.add_argument("cube", help="cube document path, or - for stdin")
    render.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (ParseError, UnknownLaw, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CubicalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        elapsed = time.perf_counter() - start
        print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
