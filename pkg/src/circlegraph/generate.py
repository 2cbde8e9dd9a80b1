"""Random graph generators. All are deterministic for a given seed."""

from __future__ import annotations

import numpy as np

from .chords import Word, crossing_pairs
from .graph import Graph


def random_matching_word(n: int, seed=None) -> Word:
    """A uniformly random chord diagram on chords ``0..n-1``."""
    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.repeat(np.arange(n), 2))
    seen = np.zeros(n, dtype=bool)
    word = []
    for c in labels.tolist():
        word.append((c, 2 if seen[c] else 1))
        seen[c] = True
    return word


def local_matching_word(n: int, avg_degree: float = 8.0, seed=None) -> Word:
    """A random diagram whose chords are short arcs, giving about ``avg_degree`` crossings each.

    Chord ``i`` spans ``[s_i, s_i + l_i]`` with starts uniform on ``[0, n)``
    and lengths uniform on ``[0, 1.5 * avg_degree]``; endpoints are read in
    increasing coordinate order.
    """
    rng = np.random.default_rng(seed)
    starts = rng.uniform(0.0, n, size=n)
    lengths = rng.uniform(0.0, 1.5 * avg_degree, size=n)
    coords = np.concatenate([starts, starts + lengths])
    order = np.argsort(coords, kind="stable")
    word = []
    for p in order.tolist():
        word.append((p % n, 1 if p < n else 2))
    return word


def circle_graph_from_word(word: Word, n: int | None = None) -> Graph:
    if n is None:
        n = len(word) // 2
    g = Graph(n)
    for a, b in crossing_pairs(word):
        g.add_edge(a, b)
    return g


def random_circle_graph(n: int, seed=None, sparse_degree: float | None = None) -> tuple[Graph, Word]:
    """Interlacement graph of a random diagram, together with that diagram.

    With ``sparse_degree`` the diagram comes from :func:`local_matching_word`;
    otherwise the matching is uniform.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if sparse_degree is None:
        word = random_matching_word(n, seed)
    else:
        word = local_matching_word(n, sparse_degree, seed)
    return circle_graph_from_word(word, n), word


def random_graph(n: int, m: int, seed=None) -> Graph:
    """Uniform graph with exactly ``m`` edges on ``n`` vertices."""
    total = n * (n - 1) // 2
    if n < 1 or m < 0 or m > total:
        raise ValueError(f"cannot place {m} edges on {n} vertices")
    rng = np.random.default_rng(seed)
    picks = rng.choice(total, size=m, replace=False)
    g = Graph(n)
    # index k enumerates pairs (u, v), u < v, row by row
    for k in np.sort(picks).tolist():
        u = int(n - 2 - int(np.floor(np.sqrt(-8 * k + 4 * n * (n - 1) - 7) / 2.0 - 0.5)))
        v = int(k + u + 1 - total + (n - u) * ((n - u) - 1) // 2)
        g.add_edge(u, v)
    return g
