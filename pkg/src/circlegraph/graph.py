"""Simple undirected graphs on dense integer ids, plus LBFS.

The LBFS routine uses partition refinement and breaks ties by lowest vertex
id, so every ordering it produces is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class Graph:
    """Undirected simple graph on vertices ``0 .. n-1``.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> sorted(g.neighbors(1))
    [0, 2]
    """

    __slots__ = ("adj",)

    def __init__(self, n: int = 0, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        g = cls(len(adj))
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                g.add_edge(u, v)
        return g

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < len(self.adj)):
            raise ValueError(f"invalid vertex id {v!r}")

    def add_vertex(self) -> int:
        self.adj.append(set())
        return len(self.adj) - 1

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def vertices(self) -> range:
        return range(len(self.adj))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = [set(a) for a in self.adj]
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class LbfsOrdering:
    order: tuple[int, ...]
    position: tuple[int, ...]

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "LbfsOrdering":
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        return cls(tuple(order), tuple(pos))

    def __iter__(self) -> Iterator[int]:
        return iter(self.order)

    def __len__(self) -> int:
        return len(self.order)


def connected_components(g: Graph) -> list[set[int]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s``; vertices are renumbered in increasing order.

    Returns the new graph and the map from old ids to new ids.
    """
    keep = sorted(set(s))
    for v in keep:
        g._check(v)
    remap = {v: i for i, v in enumerate(keep)}
    h = Graph(len(keep))
    for v in keep:
        a = h.adj[remap[v]]
        for w in g.adj[v]:
            j = remap.get(w)
            if j is not None:
                a.add(j)
    return h, remap


def lbfs(g: Graph, start: int = 0) -> LbfsOrdering:
    """Lexicographic BFS by partition refinement, lowest id first on ties.

    Classes of equally labelled vertices sit in a doubly linked list, the
    class with the largest label first. Inside a class vertices are kept in
    increasing id order, so the head of the first class is the next pick.
    Runs in O(n + m log d) because neighbour lists are sorted once.
    """
    n = g.n
    g._check(start)
    if n > 1 and not is_connected(g):
        raise ValueError("graph not connected")

    # vertex lists per class
    vnext = [-1] * n
    vprev = [-1] * n
    cls = [0] * n
    # class records: head, tail, previous class, next class, size
    head = [-1]
    tail = [-1]
    cprev = [-1]
    cnext = [-1]
    csize = [0]

    def append(c: int, v: int) -> None:
        cls[v] = c
        vnext[v] = -1
        vprev[v] = tail[c]
        if tail[c] == -1:
            head[c] = v
        else:
            vnext[tail[c]] = v
        tail[c] = v
        csize[c] += 1

    def detach(v: int) -> None:
        c = cls[v]
        p, nx = vprev[v], vnext[v]
        if p == -1:
            head[c] = nx
        else:
            vnext[p] = nx
        if nx == -1:
            tail[c] = p
        else:
            vprev[nx] = p
        csize[c] -= 1

    def unlink_class(c: int) -> None:
        nonlocal first
        p, nx = cprev[c], cnext[c]
        if p == -1:
            first = nx
        else:
            cnext[p] = nx
        if nx != -1:
            cprev[nx] = p

    def new_class_before(c: int) -> int:
        nonlocal first
        k = len(head)
        head.append(-1)
        tail.append(-1)
        csize.append(0)
        p = cprev[c]
        cprev.append(p)
        cnext.append(c)
        cprev[c] = k
        if p == -1:
            first = k
        else:
            cnext[p] = k
        return k

    first = 0
    for v in range(n):
        append(0, v)
    sorted_adj = [sorted(a) for a in g.adj]
    numbered = [False] * n
    order = []
    pick = start
    while True:
        c = cls[pick]
        detach(pick)
        if csize[c] == 0:
            unlink_class(c)
        numbered[pick] = True
        order.append(pick)
        if len(order) == n:
            break
        split_of: dict[int, int] = {}
        for w in sorted_adj[pick]:
            if numbered[w]:
                continue
            old = cls[w]
            k = split_of.get(old)
            if k is None:
                k = new_class_before(old)
                split_of[old] = k
            detach(w)
            append(k, w)
        for old in split_of:
            if csize[old] == 0:
                unlink_class(old)
        pick = head[first]
    return LbfsOrdering.from_order(order)


def is_lbfs(g: Graph, sigma: Sequence[int]) -> bool:
    """Check the four-point condition for an LBFS ordering (cubic; for tests).

    For every a < b < c in ``sigma`` with ac an edge and ab not an edge there
    must be some d < a adjacent to b and not to c.
    """
    n = g.n
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation of the vertices")
    pos = [0] * n
    for i, v in enumerate(sigma):
        pos[v] = i
    for ia, a in enumerate(sigma):
        for c in g.adj[a]:
            ic = pos[c]
            if ic <= ia:
                continue
            for ib in range(ia + 1, ic):
                b = sigma[ib]
                if b in g.adj[a]:
                    continue
                if not any(pos[d] < ia and d not in g.adj[c] for d in g.adj[b]):
                    return False
    return True
