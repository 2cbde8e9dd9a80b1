"""Exhaustive ground truth for small graphs.

Everything here is exponential and guarded by hard size limits.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

from .chords import Word
from .graph import Graph, is_connected

MAX_ENUM_CHORDS = 9
MAX_SEARCH_VERTICES = 9
MAX_SPLIT_VERTICES = 15


def enumerate_diagrams(n: int) -> Iterator[Word]:
    """Every matching on ``2n`` cyclic positions, as a word.

    The lowest unmatched position is always matched next; chords are
    numbered in order of their first endpoint. Yields ``(2n-1)!!`` words.
    """
    if n < 1:
        raise ValueError("need at least one chord")
    if n > MAX_ENUM_CHORDS:
        raise ValueError(f"enumeration is limited to {MAX_ENUM_CHORDS} chords")
    size = 2 * n
    partner = [-1] * size

    def rec(i: int):
        while i < size and partner[i] != -1:
            i += 1
        if i == size:
            yield _decode(partner)
            return
        for j in range(i + 1, size):
            if partner[j] == -1:
                partner[i], partner[j] = j, i
                yield from rec(i + 1)
                partner[i] = partner[j] = -1

    yield from rec(0)


def _decode(partner: list[int]) -> Word:
    label = {}
    word = []
    for i, j in enumerate(partner):
        if i < j:
            label[i] = len(label)
            word.append((label[i], 1))
        else:
            word.append((label[j], 2))
    return word


def brute_force_is_circle(g: Graph) -> Word | None:
    """A diagram of ``g`` found by exhaustive search, or ``None``.

    Builds the word left to right. Vertex 0 opens first (any diagram can be
    rotated that way). A chord may open only if it has no neighbour among
    the already closed chords, and when a chord closes its crossing set is
    final and must equal its neighbourhood. The search is complete: every
    diagram of ``g`` survives both rules.
    """
    n = g.n
    if n > MAX_SEARCH_VERTICES:
        raise ValueError(f"search is limited to {MAX_SEARCH_VERTICES} vertices")
    if n == 0:
        return []
    adj = [frozenset(a) for a in g.adj]
    word: Word = []
    opened_at = [-1] * n
    closed = [False] * n
    state = {"unopened": set(range(n))}

    def crossing(c: int) -> set[int]:
        after = word[opened_at[c] + 1:]
        seen: dict[int, int] = {}
        for x, _ in after:
            seen[x] = seen.get(x, 0) + 1
        return {x for x, k in seen.items() if k == 1}

    def rec() -> bool:
        if len(word) == 2 * n:
            return True
        open_now = [c for c in range(n) if opened_at[c] >= 0 and not closed[c]]
        for c in open_now:
            if crossing(c) == adj[c]:
                closed[c] = True
                word.append((c, 2))
                if rec():
                    return True
                word.pop()
                closed[c] = False
        for v in sorted(state["unopened"]):
            if any(closed[w] for w in adj[v]):
                continue
            state["unopened"].discard(v)
            opened_at[v] = len(word)
            word.append((v, 1))
            if rec():
                return True
            word.pop()
            opened_at[v] = -1
            state["unopened"].add(v)
        return False

    state["unopened"].discard(0)
    opened_at[0] = 0
    word.append((0, 1))
    return list(word) if rec() else None


def brute_force_splits(g: Graph) -> list[tuple[frozenset, frozenset, frozenset, frozenset]]:
    """All splits ``(A, B, A', B')`` with ``0 ∈ A``, ``|A|, |B| >= 2``.

    ``A'`` and ``B'`` are the frontiers: every edge between the sides joins
    ``A'`` to ``B'`` and all such pairs are edges.
    """
    n = g.n
    if n > MAX_SPLIT_VERTICES:
        raise ValueError(f"split search is limited to {MAX_SPLIT_VERTICES} vertices")
    masks = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    out = []
    for rest in range(1 << (n - 1)):
        a_mask = (rest << 1) | 1
        b_mask = full ^ a_mask
        if bin(a_mask).count("1") < 2 or bin(b_mask).count("1") < 2:
            continue
        fa = 0
        fb = 0
        for v in _bits(a_mask):
            cross = masks[v] & b_mask
            if cross:
                fa |= 1 << v
                fb |= cross
        if all(masks[v] & b_mask == fb for v in _bits(fa)) and all(masks[v] & a_mask == fa for v in _bits(fb)):
            out.append((frozenset(_bits(a_mask)), frozenset(_bits(b_mask)),
                        frozenset(_bits(fa)), frozenset(_bits(fb))))
    return out


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_prime(g: Graph) -> bool:
    """No split. Graphs on three or fewer vertices count as degenerate, not prime."""
    return g.n >= 4 and not brute_force_splits(g)


def label_is_prime(adj: dict) -> bool:
    keys = list(adj)
    idx = {m: i for i, m in enumerate(keys)}
    g = Graph(len(keys))
    for m, nb in adj.items():
        for o in nb:
            if idx[m] < idx[o]:
                g.add_edge(idx[m], idx[o])
    return is_prime(g)


@lru_cache(maxsize=None)
def _atlas_connected(n: int) -> tuple:
    import networkx as nx
    out = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() == n and n > 0 and nx.is_connected(h):
            out.append(tuple(sorted(tuple(sorted(e)) for e in h.edges())))
    return tuple(out)


def connected_graphs(n: int) -> list[Graph]:
    """One graph per isomorphism class of connected graphs on ``n`` vertices (n <= 7)."""
    if n > 7:
        raise ValueError("the graph atlas covers up to seven vertices")
    return [Graph(n, edges) for edges in _atlas_connected(n)]


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    """Rejection-sample G(n, p) until connected; ``p`` itself is random if not given."""
    while True:
        q = rng.uniform(0.25, 0.75) if p is None else p
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < q])
        if n == 1 or is_connected(g):
            return g


def wheel(k: int) -> Graph:
    """Cycle on ``0..k-1`` plus hub ``k`` adjacent to all of it."""
    g = Graph(k + 1, [(i, (i + 1) % k) for i in range(k)])
    for i in range(k):
        g.add_edge(i, k)
    return g


def lbfs_orderings(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every ordering that the generic LBFS could produce (small graphs only)."""
    n = g.n
    labels = [()] * n
    order: list[int] = []
    used = [False] * n

    def rec():
        if len(order) == n:
            yield tuple(order)
            return
        best = max(labels[v] for v in range(n) if not used[v])
        for v in range(n):
            if used[v] or labels[v] != best:
                continue
            used[v] = True
            order.append(v)
            saved = list(labels)
            rank = n - len(order)
            for w in g.adj[v]:
                if not used[w]:
                    labels[w] = labels[w] + (rank,)
            yield from rec()
            labels[:] = saved
            order.pop()
            used[v] = False

    yield from rec()


def good_vertices(g: Graph) -> set[int]:
    """Vertices that end some LBFS ordering."""
    return {o[-1] for o in lbfs_orderings(g)}
