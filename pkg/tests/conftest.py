"""Shared fixtures: figure reconstructions and small tree builders."""

from __future__ import annotations

import pytest

from circlegraph.chords import crossing_pairs, parse_word
from circlegraph.graph import Graph
from circlegraph.splittree import CLIQUE, PRIME, STAR, Leaf, Marker, SplitTree, far_leaves

# Diagram of the 8-vertex example graph.
FIG3_WORD = parse_word("a.2 h.1 e.1 b.2 a.1 d.1 f.2 e.2 g.1 f.1 h.2 g.2 c.1 d.2 b.1 c.2")
# Its two prime pieces: q and r are the markers of the tree edge between them.
FIG5_LEFT = parse_word("q.1 c.1 d.2 b.1 c.2 a.2 q.2 b.2 a.1 d.1")
FIG5_RIGHT = parse_word("r.1 h.1 e.1 r.2 f.2 e.2 g.1 f.1 h.2 g.2")
# x inserted adjacent to a, b, e, f, g.
FIG8_NBRS = "abefg"
FIG8_WORD = parse_word("c.1 d.2 b.1 c.2 a.2 g.2 h.2 f.1 x.1 g.1 e.2 f.2 b.2 a.1 x.2 d.1 e.1 h.1")

LETTERS = "abcdefghx"
LETTER_ID = {c: i for i, c in enumerate(LETTERS)}


def graph_of_named_word(word, names=LETTERS) -> Graph:
    """Interlacement graph with chord ``names[i]`` as vertex ``i``."""
    ids = {c: i for i, c in enumerate(names)}
    chords = {c for c, _ in word}
    g = Graph(len(chords))
    for a, b in crossing_pairs(word):
        g.add_edge(ids[a], ids[b])
    return g


def to_ids(word, names=LETTERS):
    ids = {c: i for i, c in enumerate(names)}
    return [(ids[c], k) for c, k in word]


def to_names(word, names=LETTERS):
    return [(names[c], k) for c, k in word]


def build_tree(nodes: dict, edges: list, root) -> SplitTree:
    """Hand-build a graph-labelled tree.

    ``nodes`` maps a node name to ``(kind, marker_names, centre_name)``;
    ``edges`` lists pairs of marker names or ``(marker_name, vertex)`` with
    ``vertex`` an int leaf. ``root`` is the root leaf vertex.
    """
    t = SplitTree()
    markers = {}
    for name, (kind, ms, centre) in nodes.items():
        u = t.new_node(kind)
        for m in ms:
            markers[m] = u.new_marker()
        if kind == STAR:
            u.centre = markers[centre]
        if kind == PRIME:
            raise ValueError("explicit prime labels are not needed by the fixtures")
    for a, b in edges:
        p = markers[a]
        if isinstance(b, int):
            lf = Leaf(b)
            t.leaves[b] = lf
            p.opp, lf.opp = lf, p
        else:
            o = markers[b]
            p.opp, o.opp = o, p
    t.root = t.leaves[root]
    # orient up pointers away from the root leaf
    first = t.root.opp.node
    first.up = t.root.opp
    stack = [first]
    while stack:
        u = stack.pop()
        for m in u.markers:
            o = m.opp
            if isinstance(o, Marker) and m is not u.up:
                o.node.up = o
                stack.append(o.node)
    return t, markers


def tree_signature(t: SplitTree) -> frozenset:
    """Isomorphism invariant of a split tree with fixed leaves.

    Each node is described by its kind and, per marker, the vertex set on
    the far side (plus which of them is the star centre).
    """
    out = set()
    for u in t.nodes:
        sides = frozenset(frozenset(lf.vertex for lf in far_leaves(t, m)) for m in u.markers)
        centre = frozenset(lf.vertex for lf in far_leaves(t, u.centre)) if u.kind == STAR else None
        out.add((u.kind, sides, centre))
    return frozenset(out)


FIG1_NODES = {
    "u0": (STAR, ["k", "q", "l11"], "k"),
    "u1": (CLIQUE, ["kb", "l14", "l15"], None),
    "v1": (CLIQUE, ["qb", "l1", "l3", "to2", "to3"], None),
    "v2": (STAR, ["b2", "l4", "l2"], "l4"),
    "v3": (STAR, ["b3", "l7", "l5", "l6"], "l7"),
}
FIG1_EDGES = [
    ("k", "kb"), ("q", "qb"), ("to2", "b2"), ("to3", "b3"),
    ("l11", 11), ("l14", 14), ("l15", 15), ("l1", 1), ("l3", 3),
    ("l4", 4), ("l2", 2), ("l7", 7), ("l5", 5), ("l6", 6),
]


@pytest.fixture
def fig1_tree():
    return build_tree(FIG1_NODES, FIG1_EDGES, root=11)
