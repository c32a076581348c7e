"""Command-line interface: show, mutate, enumerate, verify, export-dot."""
from __future__ import annotations

import argparse
import json
import sys

from . import torus
from ._expr import ParseError
from .catalog import UnknownExample, builtin_seed, is_builtin, ExampleBundle
from .exgraph import (
    BoundExceeded,
    almost_positive_roots,
    cluster_type,
    collect_variables,
    enumerate_graph,
    quiver_dot,
    root_labeling,
)
from .ncalg import CompletionError, DegreeBoundError, verify_identity
from .seed import SeedError, quiver_of
from .seedfile import SeedFileError, load
from .verify import _format_rhs, _realize_rhs, verify_example

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_VALIDATION = 3
EXIT_BOUND = 4


class CLIError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def load_source(source) -> ExampleBundle:
    if is_builtin(source):
        return builtin_seed(source)
    try:
        seed = load(source)
    except FileNotFoundError:
        raise CLIError(
            f"{source!r} is neither a builtin example nor a readable seed file", EXIT_VALIDATION
        ) from None
    return ExampleBundle(source, seed)


def _matrix_lines(rows, labels, header=None):
    width = max([len(str(x)) for row in rows for x in row] + [1])
    lw = max(len(l) for l in labels) if labels else 0
    out = []
    if header:
        out.append(" " * (lw + 2) + " ".join(h.rjust(width) for h in header))
    for label, row in zip(labels, rows):
        out.append(f"  {label.ljust(lw)}  " + " ".join(str(x).rjust(width) for x in row))
    return out


def _diagnosis(seed):
    m, n = seed.m, seed.n
    prod = [
        [sum(seed.B.entries[i][c] * seed.L[i][j] for i in range(m)) for j in range(m)]
        for c in range(n)
    ]
    return prod


def render_seed(seed, title=None):
    lines = []
    if title:
        lines.append(title)
    frozen = set(seed.frozen_rows)
    tags = [f"{n}{' (frozen)' if i in frozen else ''}" for i, n in enumerate(seed.names)]
    lines.append("names: " + ", ".join(tags))
    lines.append("mutable rows: " + " ".join(str(r) for r in seed.mutable_rows))
    cols = [seed.names[r] for r in seed.mutable_rows]
    lines.append("B =")
    lines.extend(_matrix_lines(seed.B.entries, seed.names, cols) if seed.n else
                 [f"  ({seed.m}x0)"])
    lines.append("L =")
    lines.extend(_matrix_lines(seed.L, seed.names, list(seed.names)))
    return lines


def _quiver_lines(seed):
    arrows, frozen = quiver_of(seed.B)
    lines = ["quiver Gamma(B):"]
    if not arrows:
        lines.append("  (no arrows)")
    for i, j, w in arrows:
        mult = f" x{w}" if w != 1 else ""
        lines.append(f"  {seed.names[i]} -> {seed.names[j]}{mult}")
    boxed = [seed.names[i] for i, f in enumerate(frozen) if f]
    lines.append("  frozen (boxed): " + (", ".join(boxed) if boxed else "none"))
    return lines


def cmd_show(args, out):
    bundle = load_source(args.source)
    seed = bundle.seed
    prod = _diagnosis(seed)
    try:
        diag = seed.compatibility()
        status = f"compatible, diagonal {diag}"
        ok = True
    except SeedError as exc:
        status, ok, diag = f"NOT compatible: {exc}", False, None
    if args.format == "machine":
        json.dump({
            "names": list(seed.names), "mutable": list(seed.mutable_rows),
            "B": [list(r) for r in seed.B.entries], "L": [list(r) for r in seed.L],
            "quiver": [list(a) for a in quiver_of(seed.B)[0]],
            "BtL": prod, "compatible": ok, "diagonal": list(diag) if diag else None,
        }, out, indent=2)
        out.write("\n")
    else:
        lines = render_seed(seed, f"seed {bundle.name}")
        lines += _quiver_lines(seed)
        lines.append("B^T L =")
        lines.extend(_matrix_lines(prod, [seed.names[r] for r in seed.mutable_rows]) or ["  (empty)"])
        lines.append(status)
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_VALIDATION


def _identify(bundle, slots, r, relation, R):
    """Expected label and polynomial of the new variable, by product identity."""
    one = bundle.algebra.one()
    rhs = _realize_rhs(relation, slots, one)
    for label, poly in bundle.expected_variables.items():
        if verify_identity(slots[r] * poly, rhs, R)[0]:
            return label, poly
    return None, None


def cmd_mutate(args, out):
    bundle = load_source(args.source)
    seed = bundle.seed
    initial = seed
    seed.compatibility()
    xnames = [f"X{i + 1}" for i in range(seed.m)]
    labels = list(seed.names)
    realized = None
    R = None
    if bundle.algebra is not None and bundle.realization is not None:
        R = bundle.algebra.rewrite_system(args.degree_bound)
        realized = [bundle.realization[n] for n in seed.names]
    steps = []
    for pos in args.directions:
        if not 0 <= pos < seed.m:
            raise CLIError(f"position {pos} is out of range 0..{seed.m - 1}", EXIT_VALIDATION)
        k = seed.column_for(pos)
        relation = seed.exchange_relation(k)
        new_x = xnames[pos] + "'"
        new_label = labels[pos] + "'"
        poly = None
        if realized is not None:
            lab, poly = _identify(bundle, realized, pos, relation, R)
            if lab is not None:
                new_label = lab
        nxt = seed.mutate(k, name=new_label)
        expansion = nxt.expansions[pos]
        steps.append({
            "position": pos,
            "column": k,
            "relation": f"{xnames[pos]}*{new_x} = {_format_rhs(relation, xnames)}",
            "relation_labels": f"{labels[pos]}*{new_label} = {_format_rhs(relation, labels)}",
            "expansion": expansion.format(list(initial.names)),
            "identified": new_label if poly is not None else None,
        })
        xnames[pos] = new_x
        labels[pos] = new_label
        if realized is not None:
            realized[pos] = poly
            if poly is None:
                realized = None
        seed = nxt
    same = seed.mutable_keys() == initial.mutable_keys() and seed.B == initial.B and seed.L == initial.L
    if args.format == "machine":
        json.dump({
            "steps": steps, "names": labels,
            "B": [list(r) for r in seed.B.entries], "L": [list(r) for r in seed.L],
            "equals_initial": same,
        }, out, indent=2)
        out.write("\n")
        return EXIT_OK
    lines = []
    for s in steps:
        lines.append(f"mutate position {s['position']} (column {s['column']}):")
        lines.append(f"  {s['relation']}")
        lines.append(f"  {s['relation_labels']}")
        lines.append(f"  new variable in the initial cluster: {s['expansion']}")
    lines += render_seed(seed, "resulting seed")
    if same:
        lines.append("resulting seed equals the initial seed")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _graph_labels(bundle, degree_bound):
    if bundle.algebra is None or bundle.realization is None:
        return None
    try:
        return verify_example(bundle, degree_bound=degree_bound).labels
    except (CompletionError, DegreeBoundError):
        return None


def cmd_enumerate(args, out):
    bundle = load_source(args.source)
    labels = None if args.plain_labels else _graph_labels(bundle, args.degree_bound)
    graph = enumerate_graph(bundle.seed, max_vertices=args.max, labels=labels)
    mutable, frozen = collect_variables(graph)
    roots = root_labeling(graph)
    expected_roots = almost_positive_roots(bundle.seed)
    bijective = expected_roots is not None and sorted(roots.values()) == sorted(expected_roots)
    kind = cluster_type(graph)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graph.to_dot())
    if args.format == "machine":
        data = graph.to_adjacency()
        data.update({
            "n_vertices": graph.n_vertices,
            "n_directed_edges": graph.n_directed_edges,
            "n_undirected_edges": len(graph.undirected_edges()),
            "mutable_variables": mutable,
            "frozen_variables": frozen,
            "type": kind,
            "denominator_vectors": {k: list(v) for k, v in roots.items()},
            "almost_positive_roots": bijective,
        })
        json.dump(data, out, indent=2, ensure_ascii=False)
        out.write("\n")
        return EXIT_OK
    lines = [
        f"exchange graph of {bundle.name}",
        f"  vertices: {graph.n_vertices}",
        f"  directed edges: {graph.n_directed_edges} "
        f"({len(graph.undirected_edges())} undirected)",
        f"  variables: {len(mutable) + len(frozen)} total, "
        f"{len(mutable)} mutable, {len(frozen)} frozen",
        "  mutable: " + ", ".join(mutable),
        "  frozen: " + (", ".join(frozen) if frozen else "none"),
        f"  type: {kind}",
        "  denominator vectors:",
    ]
    for label, vec in roots.items():
        lines.append(f"    {label}: {vec}")
    if expected_roots is not None:
        verdict = "biject with" if bijective else "do NOT match"
        lines.append(f"  denominator vectors {verdict} the almost positive roots")
    for v in range(graph.n_vertices):
        lines.append(f"  vertex {v}: {{{', '.join(graph.cluster_labels(v))}}}")
    if args.dot:
        lines.append(f"  DOT written to {args.dot}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    if not is_builtin(args.name):
        raise CLIError(f"verify needs a builtin example, got {args.name!r}", EXIT_VALIDATION)
    bundle = builtin_seed(args.name)
    if bundle.algebra is None:
        raise CLIError(f"{args.name} has no algebra realization to verify", EXIT_VALIDATION)
    report = verify_example(bundle, degree_bound=args.degree_bound, max_vertices=args.max)
    if args.format == "machine":
        json.dump(report.to_dict(), out, indent=2, ensure_ascii=False)
        out.write("\n")
    else:
        out.write(report.format_text() + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_export_dot(args, out):
    bundle = load_source(args.source)
    if args.what == "quiver":
        text = quiver_dot(bundle.seed)
    else:
        labels = None if args.plain_labels else _graph_labels(bundle, args.degree_bound)
        text = enumerate_graph(bundle.seed, max_vertices=args.max, labels=labels).to_dot()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(
        prog="qcluster", description="Exact computations with quantum cluster algebras."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--max", type=int, default=10000, help="vertex bound for enumeration")
    common.add_argument("--degree-bound", type=int, default=8, help="rewriting degree bound")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("show", parents=[common], help="print a seed, its quiver and B^T L")
    s.add_argument("source", help="builtin name, projective(n), or seed file")
    s.set_defaults(func=cmd_show)

    s = sub.add_parser("mutate", parents=[common], help="mutate at cluster positions")
    s.add_argument("source")
    s.add_argument("directions", nargs="+", type=int,
                   help="0-based positions of mutable variables, applied left to right")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("enumerate", parents=[common], help="enumerate the exchange graph")
    s.add_argument("source")
    s.add_argument("--dot", metavar="PATH", help="also write the graph as DOT")
    s.add_argument("--plain-labels", action="store_true",
                   help="label new variables with primes instead of algebra names")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", parents=[common], help="verify a builtin example")
    s.add_argument("name")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-dot", parents=[common], help="DOT for the quiver or exchange graph")
    s.add_argument("source")
    s.add_argument("--what", choices=("graph", "quiver"), default="graph")
    s.add_argument("-o", "--output", metavar="PATH")
    s.add_argument("--plain-labels", action="store_true")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CLIError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except BoundExceeded as exc:
        err.write(f"bound exceeded: {exc}\n")
        return EXIT_BOUND
    except (SeedFileError, SeedError, ParseError, UnknownExample) as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_VALIDATION
    except (CompletionError, DegreeBoundError) as exc:
        err.write(f"rewriting failed: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
