"""Command line front end.

Exit codes: 0 success / circle, 1 negative answer, 2 bad input.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from typing import Sequence, TextIO

from .chords import crossing_pairs, format_word, parse_word
from .generate import random_circle_graph, random_graph
from .graph import Graph, connected_components, induced_subgraph, lbfs
from .oracle import brute_force_is_circle, connected_graphs, random_connected_graph
from .recognizer import certify, recognize
from .splittree import SplitTree, dump, insert_vertex, to_dot


class InputError(Exception):
    pass


def read_edge_list(stream: TextIO) -> tuple[Graph, list[str]]:
    """Parse ``u v`` lines; names get ids in order of first appearance."""
    ids: dict[str, int] = {}
    names: list[str] = []
    edges = set()
    for lineno, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected two vertex names, got {line!r}")
        a, b = parts
        if a == b:
            raise InputError(f"line {lineno}: self-loop at {a!r}")
        for x in (a, b):
            if x not in ids:
                ids[x] = len(names)
                names.append(x)
        e = (min(ids[a], ids[b]), max(ids[a], ids[b]))
        if e in edges:
            print(f"warning: line {lineno}: duplicate edge {a} {b} ignored", file=sys.stderr)
        edges.add(e)
    return Graph(len(names), sorted(edges)), names


def write_edge_list(g: Graph, out: TextIO, names: Sequence[str] | None = None) -> None:
    name = (lambda v: names[v]) if names is not None else str
    print(f"# n={g.n} m={g.m}", file=out)
    for u, v in sorted(g.edges()):
        print(f"{name(u)} {name(v)}", file=out)


def _open(path: str) -> TextIO:
    return sys.stdin if path == "-" else open(path)


def _load_graph(path: str) -> tuple[Graph, list[str]]:
    try:
        with _open(path) as fh:
            return read_edge_list(fh)
    except OSError as e:
        raise InputError(str(e)) from e


def cmd_recognize(args) -> int:
    g, names = _load_graph(args.input)
    out = recognize(g)
    if not out:
        print(f"NOT-CIRCLE at vertex {names[out.failed_vertex]}")
        print(f"detail: {out.failed_node_info}", file=sys.stderr)
        return 1
    if args.verify and not certify(g, out.diagram):
        print("internal error: certificate failed verification", file=sys.stderr)
        return 3
    for i, w in enumerate(out.components):
        print(f"{i}: {format_word([(names[c], k) for c, k in w])}")
    return 0


def cmd_certify(args) -> int:
    g, names = _load_graph(args.graph)
    try:
        with _open(args.diagram) as fh:
            word = parse_word(fh.read())
    except (OSError, ValueError) as e:
        raise InputError(str(e)) from e
    ids = {x: i for i, x in enumerate(names)}
    chords = {c for c, _ in word}
    missing = [x for x in names if x not in chords]
    extra = sorted(c for c in chords if c not in ids)
    if missing or extra:
        if missing:
            print(f"vertices without a chord: {' '.join(missing)}", file=sys.stderr)
        if extra:
            print(f"chords that are not vertices: {' '.join(extra)}", file=sys.stderr)
        return 1
    mapped = [(ids[c], k) for c, k in word]
    if certify(g, mapped):
        return 0
    crossed = {frozenset(p) for p in crossing_pairs(mapped)}
    edges = {frozenset(e) for e in g.edges()}
    for e in sorted(crossed - edges, key=sorted)[:5]:
        a, b = sorted(e)
        print(f"chords {names[a]} and {names[b]} cross but are not adjacent", file=sys.stderr)
    for e in sorted(edges - crossed, key=sorted)[:5]:
        a, b = sorted(e)
        print(f"edge {names[a]} {names[b]} has non-crossing chords", file=sys.stderr)
    return 1


def build_split_tree(g: Graph) -> SplitTree:
    """Split tree of a connected graph, built in LBFS order."""
    t = SplitTree()
    placed = set()
    for v in lbfs(g, 0).order:
        insert_vertex(t, v, sorted(w for w in g.adj[v] if w in placed))
        placed.add(v)
    return t


def cmd_split_tree(args) -> int:
    g, names = _load_graph(args.input)
    comps = connected_components(g)
    for i, comp in enumerate(comps):
        h, remap = induced_subgraph(g, comp)
        back = sorted(comp)
        t = build_split_tree(h)
        local = [names[back[v]] for v in range(h.n)]
        if len(comps) > 1:
            print(f"component {i}")
        if args.dot:
            print(to_dot(t, local))
        else:
            for line in dump(t, local):
                print(line)
    return 0


def cmd_gen(args) -> int:
    if args.n < 1:
        raise InputError("n must be at least 1")
    if args.kind == "circle":
        g, _ = random_circle_graph(args.n, seed=args.seed, sparse_degree=args.sparse_degree)
    else:
        if args.m is not None:
            m = args.m
        elif args.density is not None:
            m = round(args.density * args.n * (args.n - 1) / 2)
        else:
            raise InputError("random graphs need --m or --density")
        try:
            g = random_graph(args.n, m, seed=args.seed)
        except ValueError as e:
            raise InputError(str(e)) from e
    write_edge_list(g, sys.stdout)
    return 0


def cmd_bench(args) -> int:
    for n in args.sizes:
        g, _ = random_circle_graph(n, seed=args.seed, sparse_degree=args.degree)
        t0 = time.perf_counter()
        out = recognize(g)
        ms = (time.perf_counter() - t0) * 1000.0
        if not out:
            print(f"recognizer rejected a generated circle graph (n={n})", file=sys.stderr)
            return 1
        print(f"{n} {g.m} {ms:.1f}")
    return 0


def cmd_oracle_check(args) -> int:
    if not 1 <= args.max_n <= 8:
        raise InputError("max-n must lie between 1 and 8")
    rng = random.Random(args.seed)
    agree = total = 0
    for n in range(1, args.max_n + 1):
        graphs = connected_graphs(n) if n <= 7 else [random_connected_graph(n, rng) for _ in range(args.samples)]
        for g in graphs:
            total += 1
            if bool(recognize(g)) == (brute_force_is_circle(g) is not None):
                agree += 1
            else:
                print(f"disagreement on n={n}: {sorted(g.edges())}", file=sys.stderr)
    print(f"agree {agree}/{total}")
    return 0 if agree == total else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circlegraph", description="Circle graph recognition with chord diagram certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("recognize", help="decide whether an edge list is a circle graph")
    r.add_argument("input", help="edge list file, or - for standard input")
    r.add_argument("--verify", action="store_true", help="re-check the certificate before printing")
    r.set_defaults(func=cmd_recognize)

    c = sub.add_parser("certify", help="check a diagram against a graph")
    c.add_argument("graph")
    c.add_argument("diagram")
    c.set_defaults(func=cmd_certify)

    s = sub.add_parser("split-tree", help="print the split tree")
    s.add_argument("input")
    s.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of text")
    s.set_defaults(func=cmd_split_tree)

    gn = sub.add_parser("gen", help="generate a graph as an edge list")
    gn.add_argument("kind", choices=["circle", "random"])
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--m", type=int)
    gn.add_argument("--density", type=float)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--sparse-degree", type=float, default=None,
                    help="circle graphs from short random chords with about this average degree")
    gn.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time recognition of random circle graphs")
    b.add_argument("--sizes", type=int, nargs="+", default=[10000, 20000, 40000])
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--degree", type=float, default=8.0)
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oracle-check", help="compare against exhaustive search on small graphs")
    o.add_argument("--max-n", type=int, default=6)
    o.add_argument("--samples", type=int, default=500, help="random graphs for n = 8")
    o.add_argument("--seed", type=int, default=0)
    o.set_defaults(func=cmd_oracle_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
