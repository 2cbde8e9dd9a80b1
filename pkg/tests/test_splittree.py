import random

import pytest

from circlegraph.cli import build_split_tree
from circlegraph.graph import Graph, lbfs
from circlegraph.oracle import random_connected_graph
from circlegraph.splittree import (CLIQUE, EMPTY, MIXED, PERFECT, PRIME, STAR, Leaf, Marker,
                                   SplitTree, accessibility_adjacency, accessibility_graph,
                                   accessible_leaves, clean, contract_fully_mixed, dump,
                                   far_leaves, insert_vertex, mark,
                                   node_join, node_split, to_dot, validate_split_tree)

from conftest import FIG3_WORD, LETTER_ID, build_tree, graph_of_named_word, tree_signature


def vertices(leaves):
    return {lf.vertex for lf in leaves}


def brute_state(t, S, q):
    """State of a marker or leaf straight from L(q) and A(q)."""
    hit = vertices(far_leaves(t, q)) & S
    if not hit:
        return EMPTY
    return PERFECT if hit == vertices(accessible_leaves(t, q)) else MIXED


def grow(g, order=None):
    t = SplitTree()
    placed = set()
    for v in order or lbfs(g, 0).order:
        insert_vertex(t, v, sorted(w for w in g.adj[v] if w in placed))
        placed.add(v)
    return t


def random_connected_order(g, rng):
    """Any order whose prefixes induce connected graphs."""
    seq = [rng.randrange(g.n)]
    seen = set(seq)
    while len(seq) < g.n:
        v = rng.choice([v for v in range(g.n) if v not in seen and g.adj[v] & seen])
        seq.append(v)
        seen.add(v)
    return seq


# ---------------------------------------------------------------- the hand-built example

def test_example_tree_is_valid(fig1_tree):
    t, _ = fig1_tree
    assert validate_split_tree(t, accessibility_adjacency(t)) == []


def test_example_tree_accessibility(fig1_tree):
    t, mk = fig1_tree
    q = mk["q"]
    assert vertices(far_leaves(t, q)) == {1, 2, 3, 4, 5, 6, 7}
    assert vertices(accessible_leaves(t, q)) == {1, 3, 4, 7}
    # through the star centre q also sees the far clique
    from circlegraph.splittree import _through
    seen = set()
    for r in q.node.neighbors(q):
        seen |= vertices(_through(r))
    assert seen | vertices(accessible_leaves(t, q)) == {1, 3, 4, 7, 14, 15}


def test_example_tree_is_the_split_tree_of_its_graph(fig1_tree):
    t, _ = fig1_tree
    adj = accessibility_adjacency(t)
    names = sorted(adj)
    ids = {v: i for i, v in enumerate(names)}
    g = Graph(len(names), [(ids[a], ids[b]) for a in adj for b in adj[a] if a < b])
    rebuilt = build_split_tree(g)
    for lf in rebuilt.leaves.values():
        lf.vertex = names[lf.vertex]
    assert tree_signature(rebuilt) == tree_signature(t)


def test_every_marker_sees_someone(fig1_tree):
    t, _ = fig1_tree
    for u in t.nodes:
        for m in u.markers:
            assert accessible_leaves(t, m)


def test_single_clique_and_star_accessibility():
    t, mk = build_tree({"u": (CLIQUE, ["x", "y", "z"], None)}, [("x", 0), ("y", 1), ("z", 2)], 0)
    assert vertices(accessible_leaves(t, mk["x"])) == {0}
    assert sorted(accessibility_graph(t).edges()) == [(0, 1), (0, 2), (1, 2)]
    t, mk = build_tree({"u": (STAR, ["x", "y", "z"], "y")}, [("x", 0), ("y", 1), ("z", 2)], 0)
    assert sorted(accessibility_graph(t).edges()) == [(0, 1), (1, 2)]


# ---------------------------------------------------------------- join and split

def two_triangles():
    return build_tree(
        {"u": (CLIQUE, ["a", "b", "p"], None), "v": (CLIQUE, ["c", "d", "r"], None)},
        [("a", 0), ("b", 1), ("p", "r"), ("c", 2), ("d", 3)], 0)


def test_joining_two_cliques_gives_a_clique():
    t, mk = two_triangles()
    assert any("clique nodes" in e for e in validate_split_tree(t))
    before = accessibility_adjacency(t)
    u = node_join(t, mk["p"])
    assert u.kind == CLIQUE and len(u.markers) == 4 and len(t.nodes) == 1
    assert accessibility_adjacency(t) == before
    assert validate_split_tree(t, before) == []


def test_join_at_leaf_edge_rejected():
    t, mk = two_triangles()
    with pytest.raises(ValueError):
        node_join(t, mk["a"])


def test_clique_split():
    t, mk = build_tree({"u": (CLIQUE, ["a", "b", "c", "d"], None)},
                       [("a", 0), ("b", 1), ("c", 2), ("d", 3)], 0)
    before = accessibility_adjacency(t)
    a, b = node_split(t, mk["a"].node, [mk["c"], mk["d"]])
    assert a.node.kind == b.node.kind == CLIQUE
    assert len(a.node.markers) == len(b.node.markers) == 3
    assert accessibility_adjacency(t) == before
    assert validate_split_tree(t, before, reduced=False) == []


def test_star_split_of_leaves():
    t, mk = build_tree({"u": (STAR, ["c", "a", "b", "d"], "c")},
                       [("c", 0), ("a", 1), ("b", 2), ("d", 3)], 0)
    before = accessibility_adjacency(t)
    a, b = node_split(t, mk["c"].node, [mk["a"], mk["b"]])
    assert a.node.kind == b.node.kind == STAR
    assert b.node.centre is b and a.node.centre is mk["c"]
    assert accessibility_adjacency(t) == before
    assert validate_split_tree(t, before, reduced=False) == []
    # the new edge joins a star centre to a star leaf, which is not reduced
    assert any("star centre" in e for e in validate_split_tree(t, before))


def test_prime_split_rejected():
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    t = grow(c5)
    (u,) = t.nodes
    assert u.kind == PRIME
    ms = list(u.markers)
    with pytest.raises(ValueError, match="not a split"):
        node_split(t, u, ms[:2])


def test_join_and_split_preserve_accessibility_on_random_trees():
    rng = random.Random(11)
    for _ in range(150):
        g = random_connected_graph(rng.randint(5, 10), rng)
        t = grow(g)
        before = accessibility_adjacency(t)
        internal = [m for u in t.nodes for m in u.markers if isinstance(m.opp, Marker)]
        if not internal:
            continue
        m = rng.choice(internal)
        part = [x for x in m.opp.node.markers if x is not m.opp]
        merged = node_join(t, m)
        assert accessibility_adjacency(t) == before
        assert validate_split_tree(t, before, reduced=False) == []
        node_split(t, merged, part)
        assert accessibility_adjacency(t) == before
        # splitting a merged prime label keeps both halves explicit
        assert validate_split_tree(t, before, reduced=False) == []


# ---------------------------------------------------------------- marking

def test_single_vertex_on_triangle():
    t, mk = build_tree({"u": (CLIQUE, ["a", "b", "c"], None)}, [("a", 0), ("b", 1), ("c", 2)], 0)
    m = mark(t, [0])
    assert m.state(mk["a"]) == PERFECT
    assert m.state(mk["b"]) == m.state(mk["c"]) == EMPTY
    # the leaf edge at a has states (P, E); it is chosen before the hybrid node
    assert m.classify()[0] == 6


def test_all_perfect_clique_is_case_one():
    t, _ = build_tree({"u": (CLIQUE, ["a", "b", "c"], None)}, [("a", 0), ("b", 1), ("c", 2)], 0)
    assert mark(t, [0, 1, 2]).classify()[0] == 1
    insert_vertex(t, 3, [0, 1, 2])
    (u,) = t.nodes
    assert u.kind == CLIQUE and len(u.markers) == 4


def test_centre_leaf_only_is_case_two():
    t, mk = build_tree({"u": (STAR, ["c", "s", "t"], "c")}, [("c", 0), ("s", 1), ("t", 2)], 0)
    assert mark(t, [0]).classify()[0] == 2
    insert_vertex(t, 3, [0])
    (u,) = t.nodes
    assert u.kind == STAR and len(u.markers) == 4 and u.centre is mk["c"]
    assert validate_split_tree(t, {0: {1, 2, 3}, 1: {0}, 2: {0}, 3: {0}}) == []


def test_marking_of_the_two_prime_nodes():
    g = graph_of_named_word(FIG3_WORD)
    t = grow(g)
    assert sorted(len(u.markers) for u in t.nodes) == [5, 5]
    S = [LETTER_ID[c] for c in "abefg"]
    m = mark(t, S)
    for u in t.nodes:
        for q in u.markers:
            o = q.opp
            if isinstance(o, Marker):
                assert m.state(q) == MIXED
            else:
                want = PERFECT if o.vertex in S else EMPTY
                assert m.state(q) == want
    assert m.classify()[0] == 7


def test_marking_matches_definition():
    rng = random.Random(12)
    for _ in range(300):
        g = random_connected_graph(rng.randint(4, 10), rng)
        t = grow(g, random_connected_order(g, rng))
        S = set(rng.sample(range(g.n), rng.randint(1, g.n)))
        m = mark(t, sorted(S))
        for u in t.nodes:
            for q in u.markers:
                assert m.state(q) == brute_state(t, S, q)
        for lf in t.leaves.values():
            assert m.leaf_state(lf) == brute_state(t, S, lf)


# ---------------------------------------------------------------- clean and contraction

def three_nodes(own=3):
    """A clique with ``own`` leaves 1.. and two star neighbours holding 4, 5 and 6, 7."""
    ms = [f"m{i}" for i in range(1, own + 1)]
    return build_tree(
        {"u": (CLIQUE, ms + ["m4", "m5"], None),
         "w4": (STAR, ["b4", "l4", "l5"], "b4"),
         "w5": (STAR, ["b5", "l6", "l7"], "b5")},
        [(m, i) for i, m in enumerate(ms, 1)] + [("m4", "b4"), ("m5", "b5"),
         ("l4", 4), ("l5", 5), ("l6", 6), ("l7", 7)], 1)


def test_clean_splits_off_the_perfect_trio():
    t, mk = three_nodes()
    before = accessibility_adjacency(t)
    m = mark(t, [1, 2, 3, 4, 6])
    case, tm = m.classify()
    assert case == 7 and len(tm) == 2
    nodes = clean(t, m)
    u = mk["m4"].node
    assert len(u.markers) == 3
    assert [m.state(x) for x in u.markers].count(MIXED) == 2
    side = {x for x in u.markers if x not in (mk["m4"], mk["m5"])}
    (a,) = side
    assert m.states[a] == PERFECT
    assert {x.opp.vertex for x in a.opp.node.markers if isinstance(x.opp, Leaf)} == {1, 2, 3}
    assert u in nodes
    assert accessibility_adjacency(t) == before
    assert validate_split_tree(t, before, reduced=False) == []


def test_clean_splits_off_the_empty_pair():
    t, mk = three_nodes()
    before = accessibility_adjacency(t)
    m = mark(t, [1, 4, 6])
    assert m.classify()[0] == 7
    count = len(t.nodes)
    clean(t, m)
    assert len(t.nodes) == count + 1
    pair = mk["m2"].node
    assert pair is mk["m3"].node and pair is not mk["m1"].node
    assert accessibility_adjacency(t) == before


def test_clean_leaves_small_degenerate_nodes_alone():
    t, mk = three_nodes(own=2)
    m = mark(t, [1, 4, 6])
    assert m.classify()[0] == 7
    count = len(t.nodes)
    clean(t, m)
    # one perfect and one empty marker beside the two mixed ones
    assert len(t.nodes) == count


def test_single_fully_mixed_edge_contracts_once():
    t, _ = three_nodes()
    m = mark(t, [1, 2, 3, 4])
    case, tm = m.classify()
    assert case == 7 and len(tm) == 1
    clean(t, m)
    calls = []
    contract_fully_mixed(t, m, lambda *a: calls.append(a))
    assert len(calls) == 1


def test_insertions_in_the_example_trees():
    for S in ([1, 2, 3, 4, 6], [1, 2, 3, 4], [1, 4, 6], [5], [2, 5, 7]):
        t, _ = three_nodes()
        adj = accessibility_adjacency(t)
        adj[8] = set(S)
        for v in S:
            adj[v] = adj[v] | {8}
        insert_vertex(t, 8, S)
        assert validate_split_tree(t, adj) == []


def test_eight_vertex_insertion_structure():
    g = graph_of_named_word(FIG3_WORD)
    t = grow(g)
    S = [LETTER_ID[c] for c in "abefg"]
    insert_vertex(t, 8, S)
    (u,) = t.nodes
    assert u.kind == PRIME and len(u.markers) == 9
    adj = accessibility_adjacency(t)
    assert adj[8] == set(S)


# ---------------------------------------------------------------- validation and growth

def test_growth_in_any_connected_order_stays_valid():
    rng = random.Random(13)
    for _ in range(300):
        g = random_connected_graph(rng.randint(4, 10), rng)
        seq = random_connected_order(g, rng)
        t = SplitTree()
        for i, v in enumerate(seq):
            insert_vertex(t, v, [w for w in g.adj[v] if w in set(seq[:i])])
            s = set(seq[:i + 1])
            assert validate_split_tree(t, {x: g.adj[x] & s for x in s}) == []


def test_validator_reports_leaf_count_and_degree_problems():
    t, mk = two_triangles()
    node_join(t, mk["p"])
    (u,) = t.nodes
    extra = u.new_marker()
    assert validate_split_tree(t)  # dangling marker
    del u.markers[extra]
    assert validate_split_tree(t) == []


def test_dump_of_cycle_and_clique():
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    lines = dump(grow(c5))
    assert sum(line.startswith("node") for line in lines) == 1
    assert lines[0].startswith("node 0 kind=prime")
    k5 = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    lines = dump(grow(k5))
    assert lines[0] == "node 0 kind=clique markers=[0.0,0.1,0.2,0.3,0.4]"
    assert sum(line.startswith("edge") for line in lines) == 5
    assert to_dot(grow(k5)).startswith("graph splittree {")


def test_insert_requires_new_vertex():
    t = grow(Graph(3, [(0, 1), (1, 2)]))
    with pytest.raises(ValueError):
        insert_vertex(t, 1, [0])
