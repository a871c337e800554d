"""Command-line interface: ``leibniz-coh <command> [options]``.

Exit codes: 0 success, 1 computation failure, 2 resource limit, 64 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .cochain_complexes import ResourceLimit
from .cohomology_engine import (
    Budget,
    ComplexHandle,
    cohomology_dims,
    is_coboundary,
    is_cocycle,
    long_exact_sequence,
)
from .connection_calc import BATTERY, DEFAULT_SEED, run_battery, standard_checks
from .exact_linalg import RankConfig
from .lie_core import InvalidDimension, ParseError, StructureError, builtin_algebra, load_algebra
from .named_cochains import (
    build_catalog,
    expected_invariant_tables,
    invariant_tables,
    verify_invariance,
    verify_relations,
)

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_USAGE = 0, 1, 2, 64
BUILTINS = ("h_n", "so_n", "j_n", "sl_2")
IDENTITY_NAMES = {"one-dim": "one_dim", "laplacian": "laplacian",
                  "repeated-slot": "repeated_slot", "trace": "trace"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _common(p: argparse.ArgumentParser, degrees: bool = True) -> None:
    p.add_argument("--algebra", default="h_n", help="h_n, so_n, j_n, sl_2 (or h_3, so_4, ...) or a JSON file")
    p.add_argument("--n", type=int, default=3)
    if degrees:
        p.add_argument("--coefficients", choices=("adjoint", "coadjoint", "trivial"), default="adjoint")
        p.add_argument("--min-degree", type=_nonneg, default=0)
        p.add_argument("--max-degree", type=_nonneg, default=None)
    p.add_argument("--mode", choices=("exact", "modular", "auto"), default="auto")
    p.add_argument("--primes", type=int, default=None, help="agreeing primes for modular rank")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="leibniz-coh", description="Exact Leibniz and Lie-algebra cohomology.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (("hl-dims", "Leibniz cohomology HL^k(g; V)"),
                       ("lie-dims", "Chevalley-Eilenberg cohomology H^k_Lie(g; V)"),
                       ("hr-dims", "HR^m(g): coadjoint over trivial relative complex"),
                       ("rel-dims", "H^k_rel(g; V): Leibniz over Lie relative complex")):
        _common(sub.add_parser(name, help=text))
    les = sub.add_parser("les", help="long exact sequence with exactness verdicts")
    _common(les, degrees=False)
    les.add_argument("--which", choices=("rel", "coadjoint"), required=True)
    les.add_argument("--through", type=_nonneg, default=None)
    les.add_argument("--check-lifts", action="store_true")

    verify = sub.add_parser("verify", help="verification batteries")
    vsub = verify.add_subparsers(dest="target", required=True, parser_class=_Parser)
    inv = vsub.add_parser("invariants", help="named-cochain relations, invariance and tables")
    _common(inv, degrees=False)
    con = vsub.add_parser("connection", help="connection identities on random polynomial inputs")
    _common(con, degrees=False)
    con.add_argument("--identity", choices=sorted(IDENTITY_NAMES), default=None,
                     help="default: every identity plus the fixed instances")
    con.add_argument("--dim", type=int, default=2)
    con.add_argument("--degree", type=_nonneg, default=3)
    con.add_argument("--cases", type=_nonneg, default=20)
    full = vsub.add_parser("all", aliases=["paper"], help="full battery for one n")
    _common(full, degrees=False)
    full.add_argument("--max-degree", type=_nonneg, default=None)

    alg = sub.add_parser("algebra", help="algebra file utilities")
    asub = alg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    check = asub.add_parser("check", help="parse and validate an algebra file")
    check.add_argument("file")
    check.add_argument("--format", choices=("table", "json"), default="table")
    check.add_argument("--output", default=None)

    cat = sub.add_parser("catalog", help="named cochains")
    csub = cat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    dump = csub.add_parser("dump", help="print the catalog as JSON")
    dump.add_argument("--n", type=int, default=3)
    dump.add_argument("--output", default=None)
    dump.add_argument("--format", choices=("json",), default="json")
    return parser


# ---------------------------------------------------------------- helpers

def _algebra(args):
    name = args.algebra
    m = re.fullmatch(r"(h|so|j)_(\d+)", name.lower())
    if m and not Path(name).exists():
        # shorthand such as h_3 or so_4 fixes n
        args.n = int(m.group(2))
        name = args.algebra = f"{m.group(1)}_n"
    if name.lower() in BUILTINS:
        return builtin_algebra(name, None if name.lower() == "sl_2" else args.n)
    if Path(name).exists():
        return load_algebra(name)
    raise UsageError(f"unknown algebra {name!r}: not a builtin and no such file")


def _config(args) -> RankConfig:
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    return RankConfig.from_env(seed=args.seed, threads=max(1, threads), min_primes=args.primes)


def _emit(args, payload: dict, table: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(table) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dims_table(report) -> list[str]:
    head = f"{report.complex} cohomology of {report.algebra}, {report.coefficients} coefficients"
    lines = [head, "degree  dim  cochains  rank_out  method"]
    for d in report.degrees:
        lines.append(f"{d.degree:>6}  {d.dim:>3}  {d.cochains:>8}  {d.rank_out.rank:>8}  {d.rank_out.method}")
    lines.append("dims " + json.dumps(report.dims))
    return lines


def _handle(command: str, alg, args) -> ComplexHandle:
    if command == "hl-dims":
        return ComplexHandle.leibniz(alg, args.coefficients)
    if command == "lie-dims":
        return ComplexHandle.ce(alg, args.coefficients)
    if command == "rel-dims":
        return ComplexHandle.rel(alg, args.coefficients)
    return ComplexHandle.cr(alg)


def _default_max(command: str) -> int:
    return {"hl-dims": 2, "lie-dims": 3, "rel-dims": 2, "hr-dims": 3}[command]


# ---------------------------------------------------------------- commands

def cmd_dims(args) -> int:
    alg = _algebra(args)
    top = args.max_degree if args.max_degree is not None else _default_max(args.command)
    if top < args.min_degree:
        raise UsageError("--max-degree must be >= --min-degree")
    h = _handle(args.command, alg, args)
    report = cohomology_dims(h, top, args.mode, _config(args), Budget.from_env(), k_min=args.min_degree)
    _emit(args, report.to_json(), _dims_table(report))
    return EXIT_OK


def cmd_les(args) -> int:
    alg = _algebra(args)
    report = long_exact_sequence(args.which, alg, "adjoint", args.through, args.mode, _config(args),
                                 Budget.from_env(), verify_lifts=args.check_lifts)
    lines = [f"long exact sequence ({args.which}) for {alg.name}",
             "node  group  dim  ker_out  im_in  exact"]
    for node in report.nodes:
        lines.append(f"{node.space}{node.degree}  {node.label}  {node.dim}  {node.kernel}  "
                     f"{node.image}  {'yes' if node.exact else 'NO'}")
    lines.append(f"exact: {'yes' if report.exact else 'NO'}")
    _emit(args, report.to_json(), lines)
    return EXIT_OK if report.exact else EXIT_FAIL


def _invariants_payload(n: int) -> tuple[dict, list[str], bool]:
    cat = build_catalog(n)
    rel = verify_relations(n, cat)
    inv = verify_invariance(n, cat)
    tables = invariant_tables(n)
    expected = expected_invariant_tables(n)
    table_ok = all(e is None or e == g for key in tables for g, e in zip(tables[key], expected[key]))
    payload = {"n": n, "relations": rel.to_json(), "invariance": inv.to_json(),
               "tables": {"computed": tables, "expected": expected, "passed": table_ok}}
    payload["passed"] = rel.passed and inv.passed and table_ok
    lines = [f"named cochains, n = {n}"]
    for c in rel.checks + inv.checks:
        tag = "PASS" if c.passed else "FAIL"
        note = "" if c.expected else " (expected to fail)"
        lines.append(f"{tag}  {c.name}  [{c.complex}]{note}")
        if not c.passed and c.witness:
            lines.append(f"      witness {json.dumps(c.witness, sort_keys=True)}")
    for key in tables:
        lines.append(f"{'PASS' if all(e is None or e == g for g, e in zip(tables[key], expected[key])) else 'FAIL'}"
                     f"  invariants of {key}: {tables[key]}")
    return payload, lines, payload["passed"]


def cmd_verify_invariants(args) -> int:
    payload, lines, ok = _invariants_payload(args.n)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _connection_payload(args) -> tuple[dict, list[str], bool]:
    names = [IDENTITY_NAMES[args.identity]] if args.identity else list(BATTERY)
    batteries = [run_battery(name, args.dim, args.degree, args.cases, args.seed) for name in names]
    fixed = [] if args.identity else standard_checks()
    ok = all(b.ok for b in batteries) and all(h for _, h, _ in fixed)
    payload = {"seed": args.seed, "passed": ok, "batteries": [b.to_json() for b in batteries],
               "fixed": [{"name": n, "holds": h, **d} for n, h, d in fixed]}
    lines = []
    for b in batteries:
        lines.append(f"{'PASS' if b.ok else 'FAIL'}  {b.identity}  dim={b.dim} degree={b.degree} "
                     f"cases={b.passed}/{b.cases}")
        if b.counterexample:
            lines.append(f"      counterexample {json.dumps(b.counterexample, sort_keys=True)}")
    for name, holds, _ in fixed:
        lines.append(f"{'PASS' if holds else 'FAIL'}  {name}")
    return payload, lines, ok


def cmd_verify_connection(args) -> int:
    if args.dim < 1:
        raise UsageError("--dim must be >= 1")
    payload, lines, ok = _connection_payload(args)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_all(args) -> int:
    n = args.n
    cfg, budget = _config(args), Budget.from_env()
    alg = builtin_algebra("h_n", n)
    sections: dict = {}
    lines: list[str] = []
    ok = True

    def record(name, passed, value):
        nonlocal ok
        ok = ok and passed
        sections[name] = {"passed": passed, "value": value}
        lines.append(f"{'PASS' if passed else 'FAIL'}  {name}: {value}")

    expected_hl = {3: [0, 1, 1, 1, 1], 4: [0, 1, 1, 0]}
    top = args.max_degree if args.max_degree is not None else {3: 4, 4: 3}.get(n, 2)
    hl = cohomology_dims(ComplexHandle.leibniz(alg, "adjoint"), top, args.mode, cfg, budget).dims
    want = expected_hl.get(n, [0, 1, 1])[:top + 1]
    record("HL(h_n; h_n)", hl[:len(want)] == want, hl)

    if n == 3:
        for label, h, want in (("H_Lie(h_3; F)", ComplexHandle.ce(alg, "trivial"), [1, 0, 0, 2, 0, 0, 1]),
                               ("H_Lie(h_3; h_3)", ComplexHandle.ce(alg, "adjoint"), [0, 1, 1, 0, 1, 1, 0]),
                               ("H_Lie(h_3; h_3')", ComplexHandle.ce(alg, "coadjoint"), [0, 1, 1, 0, 1, 1, 0]),
                               ("H_Lie(so(3); F)", ComplexHandle.ce(builtin_algebra("so_n", 3), "trivial"),
                                [1, 0, 0, 1]),
                               ("HR(h_3)", ComplexHandle.cr(alg), [2, 0, 0, 1])):
            got = cohomology_dims(h, len(want) - 1, args.mode, cfg, budget).dims
            record(label, got == want, got)
        rel = long_exact_sequence("rel", alg, "adjoint", 4, "exact", cfg, budget)
        record("long exact sequence, Lie to Leibniz", rel.exact, len(rel.nodes))
        record("H^0_rel(h_3; h_3) = 0", rel.dims["Q"].get(2) == 0, rel.dims["Q"].get(2))
        iso = rel.maps["iota"].get(2) == rel.dims["A"].get(2) == rel.dims["B"].get(2) == 1
        record("H^2_Lie -> HL^2 isomorphism", iso, rel.maps["iota"].get(2))
        co = long_exact_sequence("coadjoint", alg, "adjoint", 3, "exact", cfg, budget)
        record("long exact sequence, coadjoint", co.exact, len(co.nodes))
    if n == 4:
        got = cohomology_dims(ComplexHandle.ce(builtin_algebra("so_n", 4), "trivial"), 6, args.mode,
                              cfg, budget).dims
        record("H_Lie(so(4); F)", got == [1, 0, 0, 2, 0, 0, 1], got)

    cat = build_catalog(n)
    if n in (3, 4):
        h = ComplexHandle.leibniz(alg, "adjoint")
        for name in ("I", "rho"):
            f = cat[name].extended
            cocycle = is_cocycle(f, h)
            exact = is_coboundary(f, h)[0] if cocycle else None
            record(f"[{name}] non-trivial class", cocycle and exact is False,
                   {"cocycle": cocycle, "coboundary": exact})

    payload, inv_lines, inv_ok = _invariants_payload(n)
    sections["named cochains"] = payload
    ok = ok and inv_ok
    lines += inv_lines

    con_args = argparse.Namespace(identity=None, dim=2, degree=3, cases=20, seed=args.seed)
    payload, con_lines, con_ok = _connection_payload(con_args)
    sections["connection"] = payload
    ok = ok and con_ok
    lines += con_lines
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit(args, {"n": n, "passed": ok, "sections": sections}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_algebra_check(args) -> int:
    alg = load_algebra(args.file)
    payload = {"name": alg.name, "dim": alg.dim, "labels": list(alg.labels), "valid": True}
    _emit(args, payload, [f"{alg.name}: dimension {alg.dim}, antisymmetry and Jacobi hold"])
    return EXIT_OK


def cmd_catalog_dump(args) -> int:
    cat = build_catalog(args.n)
    _emit(args, cat.to_json(), [])
    return EXIT_OK


def dispatch(args) -> int:
    if args.command in ("hl-dims", "lie-dims", "hr-dims", "rel-dims"):
        return cmd_dims(args)
    if args.command == "les":
        return cmd_les(args)
    if args.command == "verify":
        return {"invariants": cmd_verify_invariants, "connection": cmd_verify_connection,
                "all": cmd_verify_all, "paper": cmd_verify_all}[args.target](args)
    if args.command == "algebra":
        return cmd_algebra_check(args)
    return cmd_catalog_dump(args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args)
    except (UsageError, InvalidDimension) as exc:
        print(f"leibniz-coh: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"leibniz-coh: resource limit: {exc}", file=sys.stderr)
        if exc.required:
            print(json.dumps(exc.required, sort_keys=True), file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, StructureError, OSError) as exc:
        print(f"leibniz-coh: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ArithmeticError as exc:
        print(f"leibniz-coh: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
