"""Command-line entry point: ``krcover <command> ...``.

Exit codes: 0 when a command ran to completion (whatever the answer),
2 on usage errors, 3 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from krcover.annotated import AnnotatedInstance
from krcover.bench import bench_scaling, run_manifest, small_suite_manifest, write_jsonl_atomic
from krcover.branching import TraceLog
from krcover.cliques import enumerate_cliques
from krcover.errors import KrCoverError
from krcover.formats import read_graph_file, write_graph, write_td
from krcover.generators import GenSpec, generate
from krcover.oracle import oracle_solve
from krcover.solver import PROFILES, minimum_cover, solve, verify
from krcover.treewidth import decompose, validate_decomposition

EXIT_OK, EXIT_USAGE, EXIT_INPUT = 0, 2, 3


class InputError(Exception):
    pass


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _read_solution(path: str) -> list[int]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict):
        data = data.get("certificate") or []
    if isinstance(data, list):
        return [int(v) for v in data]
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise InputError(f"{path}: solution must be whitespace-separated ids or JSON") from None


def cmd_solve(args, out) -> int:
    g, _ = read_graph_file(args.graph)
    kwargs = {"audit": args.audit, "fallback": not args.no_fallback, "debug": args.debug}
    log = TraceLog() if args.trace else None
    if args.min:
        report = minimum_cover(g, args.r, args.profile, **kwargs)
    else:
        if args.k is None:
            raise InputError("solve needs -k unless --min is given")
        report = solve(g, args.k, args.r, args.profile, log=log, **kwargs)
    if log is not None:
        Path(args.trace).write_text(log.text())
    _emit(report.to_dict(timing=args.timing), out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    g, d = read_graph_file(args.graph)
    res = oracle_solve(AnnotatedInstance(g, d, args.k, args.r))
    _emit({"decision": res.decision, "min_size": res.min_size,
           "certificate": list(res.solution) if res.solution is not None else None}, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g, _ = read_graph_file(args.graph)
    s = _read_solution(args.solution)
    if any(not 0 <= v < g.n for v in s):
        raise InputError("solution names vertices outside the graph")
    k = len(set(s)) if args.k is None else args.k
    _emit({"valid": verify(g, args.r, s, k), "size": len(set(s)), "k": k}, out)
    return EXIT_OK


def cmd_cliques(args, out) -> int:
    g, _ = read_graph_file(args.graph)
    cl = enumerate_cliques(g, args.i)
    if args.count:
        out.write(f"{len(cl)}\n")
    else:
        for c in cl:
            out.write(" ".join(map(str, c)) + "\n")
    return EXIT_OK


def cmd_gen(args, out) -> int:
    spec = GenSpec.parse(args.spec, args.seed)
    made = generate(spec)
    Path(args.output).write_text(write_graph(made.graph))
    if args.cover:
        if made.planted is None:
            raise InputError(f"family {spec.family} emits no planted cover")
        Path(args.cover).write_text(" ".join(map(str, made.planted)) + "\n")
    _emit({"spec": spec.label(), "n": made.graph.n, "m": made.graph.m,
           "planted": list(made.planted) if made.planted is not None else None}, out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    if args.manifest == "small-suite":
        manifest, root = small_suite_manifest(), Path(".")
    else:
        path = Path(args.manifest)
        try:
            manifest = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: {exc}") from None
        root = path.parent
    records = run_manifest(manifest, root, timing=args.timing)
    write_jsonl_atomic(records, args.output)
    mismatches = sum(r["mismatch"] for r in records)
    _emit({"records": len(records), "mismatches": mismatches,
           "checked": sum(r["oracle"] is not None for r in records)}, out)
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    g, _ = read_graph_file(args.graph)
    td = decompose(g)
    Path(args.output).write_text(write_td(td, g.n))
    _emit({"bags": len(td.bags), "width": td.width, "valid": validate_decomposition(g, td)}, out)
    return EXIT_OK


def cmd_scale(args, out) -> int:
    report = bench_scaling(args.family, args.profile, range(args.k_min, args.k_max + 1), args.r, args.seed)
    text = json.dumps(report, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krcover", description="Exact K_r-Cover solver and workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide K_r-Cover")
    p.add_argument("graph")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--profile", choices=sorted(PROFILES), default="generic")
    p.add_argument("--audit", action="store_true", help="explore every branch")
    p.add_argument("--min", action="store_true", help="binary-search the optimum k")
    p.add_argument("--no-fallback", action="store_true", help="never hand small inputs to the oracle")
    p.add_argument("--debug", action="store_true", help="re-verify strippedness certificates")
    p.add_argument("--trace", metavar="FILE", help="write the branch trace here")
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force answer")
    p.add_argument("graph")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("graph")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-k", type=int)
    p.add_argument("--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cliques", help="list or count i-cliques")
    p.add_argument("graph")
    p.add_argument("-i", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("spec", help="family:key=value,... e.g. grid:rows=5,cols=5")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--cover", metavar="FILE", help="write the planted cover (planted family)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run a manifest ('small-suite' for the built-in one)")
    p.add_argument("manifest")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("decompose", help="heuristic tree decomposition")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("scale", help="leaf-count and kernel-width scaling report")
    p.add_argument("--family", default="planted-geometric", choices=["planted-geometric", "planted-bipartite"])
    p.add_argument("--profile", choices=sorted(PROFILES), default="pseudo-disk")
    p.add_argument("-r", type=int, default=3)
    p.add_argument("--k-min", type=int, default=4)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_scale)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (KrCoverError, InputError, OSError) as exc:
        print(f"krcover: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
