from itertools import permutations

import pytest

from circlegraph.chords import interlacement_graph
from circlegraph.graph import Graph
from circlegraph.oracle import (brute_force_is_circle, brute_force_splits, connected_graphs,
                                enumerate_diagrams, good_vertices, is_prime, lbfs_orderings,
                                wheel)
from circlegraph.recognizer import certify


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.mark.parametrize("n,count", [(1, 1), (3, 15), (5, 945), (6, 10395)])
def test_diagram_counts(n, count):
    words = list(enumerate_diagrams(n))
    assert len(words) == count
    assert len({tuple(w) for w in words}) == count


def test_enumeration_guard():
    with pytest.raises(ValueError):
        next(enumerate_diagrams(10))


def test_four_chord_diagrams_give_every_four_vertex_graph():
    def canon(g):
        return min(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in g.edges()))
                   for p in permutations(range(g.n)))
    # 11 isomorphism classes of graphs on four vertices
    assert len({canon(interlacement_graph(w)) for w in enumerate_diagrams(4)}) == 11


def test_search_finds_diagrams_it_can_generate():
    for n in range(1, 6):
        for w in enumerate_diagrams(n):
            g = interlacement_graph(w)
            found = brute_force_is_circle(g)
            assert found is not None and certify(g, found)


def test_triangle_and_five_cycle_are_circle():
    assert brute_force_is_circle(complete(3)) is not None
    w = brute_force_is_circle(cycle(5))
    assert certify(cycle(5), w)


def test_five_wheel_is_not_circle():
    assert brute_force_is_circle(wheel(5)) is None


def test_search_guard():
    with pytest.raises(ValueError):
        brute_force_is_circle(cycle(10))


def test_connected_graph_counts():
    counts = [len(connected_graphs(n)) for n in range(1, 7)]
    assert counts == [1, 1, 2, 6, 21, 112]


def test_circle_graph_counts_frozen():
    # frozen from exhaustive search: only two 6-vertex connected graphs are not circle
    nots = [g for g in connected_graphs(6) if brute_force_is_circle(g) is None]
    assert len(nots) == 2
    assert all(brute_force_is_circle(g) is not None for n in range(1, 6) for g in connected_graphs(n))


def test_splits_of_small_graphs():
    assert brute_force_splits(cycle(5)) == []
    p4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert (frozenset({0, 1}), frozenset({2, 3}), frozenset({1}), frozenset({2})) in brute_force_splits(p4)
    k4 = brute_force_splits(complete(4))
    assert {(a, b) for a, b, _, _ in k4} == {
        (frozenset({0, 1}), frozenset({2, 3})),
        (frozenset({0, 2}), frozenset({1, 3})),
        (frozenset({0, 3}), frozenset({1, 2})),
    }


def test_primality():
    assert is_prime(cycle(5))
    assert not is_prime(Graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert not any(is_prime(complete(n)) for n in range(1, 7))
    assert is_prime(wheel(5))


def test_lbfs_enumeration_on_path():
    p = Graph(3, [(0, 1), (1, 2)])
    assert set(lbfs_orderings(p)) == {(0, 1, 2), (1, 0, 2), (1, 2, 0), (2, 1, 0)}
    assert good_vertices(p) == {0, 2}
