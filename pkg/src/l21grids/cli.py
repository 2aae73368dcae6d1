"""Command-line front end (``l21``).

Exit codes: 0 ok, 1 malformed input, 2 capacity or budget exceeded,
3 labeling invalid, 4 witness not found, 5 refutation finding.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence, TextIO

from . import explorer as E
from . import lattice as L
from .digraph import CapacityError, from_doc, metrics, orient, random_orientation
from .lattice import GridError, dumps, grid_from_doc
from .solver import (
    BudgetExceeded,
    lower_bound,
    solve_lambda,
    solve_lambda_undirected,
    upper_bound,
    verify,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CAPACITY = 2
EXIT_INVALID = 3
EXIT_NOT_FOUND = 4
EXIT_REFUTED = 5

CHECKS = ("square-center", "tri-wheel", "dist2-lemma", "hex-conjecture", "girth5")


class InputError(Exception):
    pass


def _read_doc(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _read_oriented(path: str):
    doc = _read_doc(path)
    if "arcs" not in doc:
        raise InputError(f"{path}: this command needs an oriented graph (an 'arcs' field)")
    return from_doc(doc)


def parse_labels(arg: str, n: int) -> list[int]:
    """Labels from a ``nodeIndex,color`` CSV file, or an inline list ``1,3,0,2``."""
    if os.path.exists(arg):
        colors: dict[int, int] = {}
        with open(arg, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#") or not line[0].isdigit():
                    continue
                parts = [p.strip() for p in line.split(",")]
                if len(parts) != 2:
                    raise InputError(f"{arg}:{lineno}: expected 'nodeIndex,color'")
                try:
                    node, color = int(parts[0]), int(parts[1])
                except ValueError:
                    raise InputError(f"{arg}:{lineno}: non-integer field") from None
                if node in colors:
                    raise InputError(f"{arg}:{lineno}: node {node} labelled twice")
                colors[node] = color
        missing = [v for v in range(n) if v not in colors]
        if missing or len(colors) != n:
            raise InputError(f"{arg}: labels must cover nodes 0..{n - 1} exactly")
        out = [colors[v] for v in range(n)]
    else:
        try:
            out = [int(x) for x in arg.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"labels {arg!r} are neither a file nor a comma-separated list") from None
    if any(c < 0 for c in out):
        raise InputError("labels must be nonnegative")
    return out


def _emit(out: TextIO, doc) -> None:
    out.write(dumps(doc) + "\n")


# -- subcommands ------------------------------------------------------------

def cmd_gen(args, out: TextIO) -> int:
    grid = L.patch(args.patch, args.kind)
    if args.orient is not None:
        _emit(out, orient(grid, args.orient).to_doc())
    elif args.random is not None:
        _emit(out, random_orientation(grid, random.Random(args.random)).to_doc())
    else:
        _emit(out, grid.to_doc())
    return EXIT_OK


def cmd_solve(args, out: TextIO) -> int:
    doc = _read_doc(args.input)
    if "arcs" in doc:
        result = solve_lambda(from_doc(doc), args.budget)
        res = result.to_doc()
        res["directed"] = True
    else:
        result = solve_lambda_undirected(grid_from_doc(doc), args.budget)
        res = result.to_doc()
        res["directed"] = False
    _emit(out, res)
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    d = _read_oriented(args.input)
    labels = parse_labels(args.labels, d.n)
    bad = verify(d, labels)
    _emit(out, {
        "valid": not bad,
        "span": max(labels, default=0),
        "violations": [{"pair": list(v.pair), "kind": v.kind.value, "colors": list(v.colors)} for v in bad],
    })
    return EXIT_OK if not bad else EXIT_INVALID


def cmd_metrics(args, out: TextIO) -> int:
    d = _read_oriented(args.input)
    m = metrics(d)
    _emit(out, {
        "longestDipath": m.longest_dipath,
        "witnessPath": list(m.witness_path),
        "girth": "inf" if m.girth == float("inf") else int(m.girth),
        "bipartite": m.bipartite,
        "lower": lower_bound(d),
        "upper": upper_bound(d),
    })
    return EXIT_OK


def cmd_enumerate(args, out: TextIO) -> int:
    grid = grid_from_doc(_read_doc(args.input))
    summary = E.enumerate_orientations(grid, not args.no_reversal, args.budget, args.jobs)
    if args.format == "text":
        out.write(summary.to_text() + "\n")
    else:
        _emit(out, summary.to_doc())
    return EXIT_OK


def cmd_witness(args, out: TextIO) -> int:
    grid = grid_from_doc(_read_doc(args.input))
    d = E.find_witness(grid, args.dipath, args.lam)
    if d is None:
        _emit(out, {"found": False, "dipath": args.dipath, "lambda": args.lam})
        return EXIT_NOT_FOUND
    _emit(out, d.to_doc())
    return EXIT_OK


def _conjecture_inputs(paths: Sequence[str]) -> list[E.ConjectureInput]:
    items = []
    for path in paths:
        doc = _read_doc(path)
        docs = doc if isinstance(doc, list) else [doc]
        for entry in docs:
            planar = bool(entry.get("planar", True)) if isinstance(entry, dict) else True
            graph = from_doc(entry) if isinstance(entry, dict) and "arcs" in entry else grid_from_doc(entry)
            items.append(E.ConjectureInput(graph, planar))
    return items


def cmd_check(args, out: TextIO) -> int:
    name = args.name
    if name == "square-center":
        report = E.check_square_center()
    elif name == "tri-wheel":
        report = E.check_triangular_wheel(jobs=args.jobs)
    elif name == "dist2-lemma":
        report = E.check_dist2_lemma()
    elif name == "hex-conjecture":
        report = E.check_hexagonal_conjecture(args.max_hex, jobs=args.jobs)
    else:
        graphs = _conjecture_inputs(args.graphs) if args.graphs else None
        report = E.check_girth5_conjecture(graphs, samples=args.samples, seed=args.seed, jobs=args.jobs)
    _emit(out, report.to_doc())
    return EXIT_OK if report.ok and not report.refuted else EXIT_REFUTED


def cmd_paper_table(args, out: TextIO) -> int:
    report = E.paper_table()
    if args.format == "text":
        out.write(E.table_text(report) + "\n")
    else:
        _emit(out, report.to_doc())
    return EXIT_OK


def to_dot(d, labels: Sequence[int] | None = None) -> str:
    lines = ["digraph G {"]
    grid = d.grid
    for v in range(d.n):
        text = str(v)
        if grid is not None and grid.is_lattice:
            x, y = grid.nodes[v]
            text += f" ({x},{y})"
        if labels is not None:
            text += f" f={labels[v]}"
        lines.append(f'  {v} [label="{text}"];')
    for u, v in d.arcs:
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args, out: TextIO) -> int:
    d = _read_oriented(args.input)
    labels = parse_labels(args.labels, d.n) if args.labels else None
    if labels is not None and len(labels) != d.n:
        raise InputError(f"{len(labels)} labels for {d.n} nodes")
    out.write(to_dot(d, labels))
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("L21_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l21", description="Oriented L(2,1)-labeling of grids and digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a named patch as grid JSON")
    p.add_argument("--kind", choices=[k.value for k in L.TilingKind])
    p.add_argument("--patch", required=True, help="e.g. squareRect(3,3), triWheel, hexCycle(2), path(4)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--orient", metavar="BITS", help="direction bits in canonical edge order")
    g.add_argument("--random", metavar="SEED", type=int, help="random orientation from SEED")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact lambda of an oriented (or plain) grid")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, help="node-expansion limit")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a labeling")
    p.add_argument("--input", required=True)
    p.add_argument("--labels", required=True, help="CSV file of nodeIndex,color or inline list")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metrics", help="longest dipath, girth, bounds")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_metrics)

    jobs = _default_jobs()
    p = sub.add_parser("enumerate", help="classify every orientation of a grid")
    p.add_argument("--input", required=True)
    p.add_argument("--no-reversal", action="store_true", help="do not identify an orientation with its reverse")
    p.add_argument("--jobs", type=int, default=jobs)
    p.add_argument("--budget", type=int, help="per-class node-expansion limit")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("witness", help="find an orientation with given dipath length and lambda")
    p.add_argument("--input", required=True)
    p.add_argument("--dipath", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check", help="machine-check a published claim")
    p.add_argument("--name", required=True, choices=CHECKS)
    p.add_argument("--max-hex", type=int, default=2)
    p.add_argument("--graphs", nargs="+", metavar="FILE")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=jobs)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("paper-table", help="reproduce the (l, lambda) summary table")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_paper_table)

    p = sub.add_parser("export-dot", help="Graphviz DOT of an oriented grid")
    p.add_argument("--input", required=True)
    p.add_argument("--labels")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (InputError, GridError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except BudgetExceeded as exc:
        _emit(out, {"error": "budget", "lower": exc.lower, "upper": exc.upper, "nodesExpanded": exc.expanded})
        err.write(f"error: {exc}\n")
        return EXIT_CAPACITY
    except CapacityError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAPACITY


def main() -> None:
    try:
        sys.stdout.reconfigure(line_buffering=True, encoding="utf-8")
    except AttributeError:
        pass
    sys.exit(run())


if __name__ == "__main__":
    main()
