"""Command-line front end.

Exit codes are shared by every subcommand: 0 yes/accept, 1 no/reject,
2 usage or format error, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import formats
from .formula import (
    DEFAULT_NAE_VAR_CAP,
    AssignmentError,
    Formula,
    FormulaError,
    Literal,
    bound_occurrences,
    is_good,
    parse_dimacs,
    random_formula,
    solve_nae_bruteforce,
    to_dimacs,
)
from .graph import GraphError, PartitionError, degree_report, verify_two_tree_partition
from .reduction import (
    ReductionError,
    StructureError,
    extract_assignment,
    reduce,
    witness_partition,
)
from .solver import NO_PARTITION, PARTITION, solve_p2t

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_TIMEOUT = 0, 1, 2, 3

UNIT_CLAUSE_MSG = "trivially NAE-unsatisfiable (unit clause)"


class UsageError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _has_unit_clause(formula: Formula) -> bool:
    return any(len(c) == 1 for c in formula.clauses)


def _format_assignment(assignment) -> str:
    lits = [i if val else -i for i, val in sorted(assignment.items())]
    return "v " + " ".join(str(x) for x in lits + [0])


def _parse_assignment(text: str, num_vars: int) -> dict:
    try:
        lits = [int(x) for x in text.replace(",", " ").split() if x not in ("v", "0")]
    except ValueError:
        raise UsageError(f"bad assignment {text!r}: expected signed integers") from None
    assignment = {}
    for x in lits:
        lit = Literal.from_int(x)
        assignment[lit.variable] = not lit.negated
    missing = [i for i in range(1, num_vars + 1) if i not in assignment]
    if missing:
        raise UsageError(f"assignment misses variables {missing}")
    return assignment


def cmd_reduce(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    if _has_unit_clause(formula):
        print(UNIT_CLAUSE_MSG)
        return EXIT_NO
    graph, manifest = reduce(formula)
    _write(args.graph_out, formats.serialize_graph(graph))
    _write(args.manifest_out, formats.serialize_manifest(manifest))
    print(f"reduced: {graph.num_vertices} vertices, {graph.num_edges} edges")
    return EXIT_YES


def cmd_pipeline(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    if _has_unit_clause(formula):
        print(UNIT_CLAUSE_MSG)
        return EXIT_NO
    assignment = solve_nae_bruteforce(formula, var_cap=args.nae_var_cap)
    graph, manifest = reduce(formula)
    print(f"formula: {formula.num_vars} variables, {len(formula.clauses)} clauses")
    print(f"graph: {graph.num_vertices} vertices, {graph.num_edges} edges")
    if assignment is not None:
        print("good evaluation: " + _format_assignment(assignment))
        partition = witness_partition(formula, assignment, graph, manifest)
        verdict = verify_two_tree_partition(graph, partition)
        if not verdict:
            raise AssertionError(f"witness partition rejected: {verdict}")
        back = extract_assignment(graph, manifest, partition)
        if back != assignment:
            raise AssertionError("extracted assignment differs from the witness")
        print("YES + certificates verified")
        return EXIT_YES
    print("no good evaluation; searching for a two-tree partition")
    outcome = solve_p2t(graph, budget=args.budget, node_cap=args.node_cap)
    print(f"solver: {outcome}")
    if outcome.status == PARTITION:
        # a partition here would contradict the reduction's soundness
        extract_assignment(graph, manifest, outcome.partition)
        raise AssertionError("partition found for an NAE-unsatisfiable formula")
    if outcome.status == NO_PARTITION:
        print("NO: no two-tree partition")
        return EXIT_NO
    print("TIMEOUT: undetermined")
    return EXIT_TIMEOUT


def cmd_solve_nae(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    assignment = solve_nae_bruteforce(formula, var_cap=args.nae_var_cap)
    if assignment is None:
        print("s NAE-UNSATISFIABLE")
        return EXIT_NO
    print("s NAE-SATISFIABLE")
    print(_format_assignment(assignment))
    return EXIT_YES


def cmd_bound(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    bounded, _ = bound_occurrences(formula)
    added = bounded.num_vars - formula.num_vars
    _write(args.output, to_dimacs(bounded, [f"occurrence-bounded: {added} fresh variables"]))
    return EXIT_YES


def cmd_witness(args) -> int:
    formula = parse_dimacs(_read(args.cnf))
    if _has_unit_clause(formula):
        print(UNIT_CLAUSE_MSG, file=sys.stderr)
        return EXIT_NO
    if args.assignment is not None:
        assignment = _parse_assignment(args.assignment, formula.num_vars)
        if not is_good(formula, assignment):
            print("assignment is not a good evaluation", file=sys.stderr)
            return EXIT_NO
    else:
        assignment = solve_nae_bruteforce(formula, var_cap=args.nae_var_cap)
        if assignment is None:
            print("formula is NAE-unsatisfiable; no witness", file=sys.stderr)
            return EXIT_NO
    graph, manifest = reduce(formula)
    partition = witness_partition(formula, assignment, graph, manifest)
    _write(args.output, formats.serialize_partition(graph, partition))
    return EXIT_YES


def cmd_verify(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    partition = formats.parse_partition(_read(args.partition))
    verdict = verify_two_tree_partition(graph, partition)
    if verdict:
        print("accept")
        return EXIT_YES
    print(f"reject {verdict.reason} class {verdict.edge_class}")
    if verdict.witness is not None:
        if verdict.reason == "class-cyclic":
            print("cycle: " + " ".join(f"{u}-{w}" for u, w in verdict.witness))
        else:
            for comp in verdict.witness:
                print("component: " + " ".join(str(x) for x in comp))
    return EXIT_NO


def cmd_extract(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    manifest = formats.parse_manifest(_read(args.manifest))
    formats.check_manifest(graph, manifest)
    partition = formats.parse_partition(_read(args.partition))
    verdict = verify_two_tree_partition(graph, partition)
    if not verdict:
        print(f"reject {verdict.reason} class {verdict.edge_class}")
        return EXIT_NO
    try:
        assignment = extract_assignment(graph, manifest, partition)
    except StructureError as exc:
        print(str(exc))
        return EXIT_NO
    print(_format_assignment(assignment))
    return EXIT_YES


def cmd_solve(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    outcome = solve_p2t(graph, budget=args.budget, node_cap=args.node_cap)
    print(f"s {outcome}")
    if outcome.status == PARTITION:
        if args.output:
            _write(args.output, formats.serialize_partition(graph, outcome.partition))
        return EXIT_YES
    return EXIT_NO if outcome.status == NO_PARTITION else EXIT_TIMEOUT


def cmd_stats(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    report = degree_report(graph)
    for x, d in report.degrees.items():
        print(f"{x} {d}")
    print(f"vertices {graph.num_vertices}")
    print(f"edges {graph.num_edges}")
    print(f"max degree {report.maximum}")
    others = report.max_excluding(("v", "nv"))
    ok = others <= 4
    print(f"max degree excluding literal vertices {others} ({'ok' if ok else 'exceeds 4'})")
    return EXIT_YES if ok else EXIT_NO


def cmd_export_dot(args) -> int:
    graph = formats.parse_graph(_read(args.graph))
    partition = formats.parse_partition(_read(args.partition)) if args.partition else None
    if partition is not None:
        partition.check_total(graph)
    _write(args.output, formats.to_dot(graph, partition))
    return EXIT_YES


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    formula = random_formula(rng, max_vars=args.vars, max_clauses=args.clauses)
    _write(args.output, to_dimacs(formula, [f"seed {args.seed}"]))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="p2t", description="NAE-SAT to two-tree partition reduction toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--budget", type=float, default=None, help="wall-clock seconds")
        p.add_argument("--node-cap", type=int, default=None, help="maximum search nodes")

    def nae_flag(p):
        p.add_argument("--nae-var-cap", type=int, default=DEFAULT_NAE_VAR_CAP)

    p = sub.add_parser("reduce", help="build the gadget graph and manifest")
    p.add_argument("cnf")
    p.add_argument("graph_out")
    p.add_argument("manifest_out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("pipeline", help="decide a formula and check both certificate directions")
    p.add_argument("cnf")
    budget_flags(p)
    nae_flag(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("solve-nae", help="brute-force NAE-SAT")
    p.add_argument("cnf")
    nae_flag(p)
    p.set_defaults(func=cmd_solve_nae)

    p = sub.add_parser("bound", help="rewrite so each literal occurs at most twice")
    p.add_argument("cnf")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("witness", help="partition from a good evaluation")
    p.add_argument("cnf")
    p.add_argument("--assignment", help="signed literals, e.g. '1 -2 3'")
    p.add_argument("-o", "--output")
    nae_flag(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check a two-tree partition")
    p.add_argument("graph")
    p.add_argument("partition")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extract", help="read an evaluation off a partition")
    p.add_argument("graph")
    p.add_argument("manifest")
    p.add_argument("partition")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("solve", help="search for a two-tree partition")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    budget_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("stats", help="degree report")
    p.add_argument("graph")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export-dot", help="Graphviz output")
    p.add_argument("graph")
    p.add_argument("--partition")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gen", help="random CNF for test corpora")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vars", type=int, default=6)
    p.add_argument("--clauses", type=int, default=8)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (UsageError, FormulaError, AssignmentError, GraphError, PartitionError,
            ReductionError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
