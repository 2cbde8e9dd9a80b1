"""Graph-labelled trees and incremental split-tree maintenance.

A :class:`SplitTree` is rooted at the leaf of the first vertex inserted;
every node records ``up``, its marker on the tree edge towards that root.
Node labels are cliques, stars or explicit adjacency dicts (kind
``"prime"``). Inserting a vertex ``x`` with neighbourhood ``S``:

1. :func:`mark` walks up from the leaves of ``S`` and assigns the states
   perfect / empty / mixed to the markers of the subtree spanned by ``S``.
2. :meth:`Marking.classify` picks one of the seven update cases.
3. :func:`insert_vertex_structure` rewrites the tree.

The engine is a general incremental split decomposition: nothing here
assumes a circle graph. The recognizer plugs chord diagrams in through a
hooks object.
"""

from __future__ import annotations

from collections import deque
from itertools import count
from typing import Iterable, Protocol

PERFECT, EMPTY, MIXED = "P", "E", "M"
PRIME, CLIQUE, STAR = "prime", "clique", "star"

_uids = count()


class Leaf:
    __slots__ = ("vertex", "opp")

    def __init__(self, vertex):
        self.vertex = vertex
        self.opp = None

    def __repr__(self) -> str:
        return f"Leaf({self.vertex!r})"


class Marker:
    __slots__ = ("node", "opp", "uid")

    def __init__(self, node: "Node"):
        self.node = node
        self.opp = None
        self.uid = next(_uids)

    def __repr__(self) -> str:
        return f"m{self.uid}"


class Node:
    """A tree node. ``markers`` is an insertion-ordered dict used as a set."""

    __slots__ = ("kind", "markers", "centre", "adj", "up", "csc", "uid")

    def __init__(self, kind: str):
        self.kind = kind
        self.markers: dict[Marker, None] = {}
        self.centre: Marker | None = None
        self.adj: dict[Marker, set[Marker]] | None = None
        self.up: Marker | None = None
        self.csc = None
        self.uid = next(_uids)

    def new_marker(self) -> Marker:
        m = Marker(self)
        self.markers[m] = None
        return m

    def degree(self) -> int:
        return len(self.markers)

    def neighbors(self, m: Marker) -> Iterable[Marker]:
        """Label neighbours of marker ``m``."""
        if self.kind == PRIME:
            return self.adj[m]
        if self.kind == CLIQUE:
            return [o for o in self.markers if o is not m]
        if m is self.centre:
            return [o for o in self.markers if o is not m]
        return [self.centre]

    def adjacent(self, a: Marker, b: Marker) -> bool:
        if a is b:
            return False
        if self.kind == PRIME:
            return b in self.adj[a]
        if self.kind == CLIQUE:
            return True
        return a is self.centre or b is self.centre

    def label_adj(self) -> dict[Marker, set[Marker]]:
        """A fresh adjacency dict of the label."""
        if self.kind == PRIME:
            return {m: set(s) for m, s in self.adj.items()}
        return {m: set(self.neighbors(m)) for m in self.markers}

    def __repr__(self) -> str:
        return f"Node({self.kind}, n{self.uid}, {len(self.markers)} markers)"


class SplitTree:
    """A graph-labelled tree whose leaves are graph vertices."""

    def __init__(self):
        self.leaves: dict = {}
        self.root: Leaf | None = None
        self.nodes: dict[Node, None] = {}

    def new_node(self, kind: str) -> Node:
        u = Node(kind)
        self.nodes[u] = None
        return u

    def __len__(self) -> int:
        return len(self.leaves)

    def add_first_vertices(self, x, nbrs: Iterable) -> None:
        """Insert one of the first three vertices (no marking involved)."""
        nbrs = set(nbrs)
        leaf = Leaf(x)
        k = len(self.leaves)
        if x in self.leaves:
            raise ValueError(f"vertex {x!r} already present")
        if not nbrs and k > 0:
            raise ValueError("vertex has no neighbour in the tree")
        if not nbrs <= set(self.leaves):
            raise ValueError("neighbour not in the tree")
        if k == 0:
            self.root = leaf
        elif k == 1:
            other = self.root
            leaf.opp, other.opp = other, leaf
        elif k == 2:
            a = self.root
            b = a.opp
            if len(nbrs) == 2:
                u = self.new_node(CLIQUE)
            else:
                u = self.new_node(STAR)
            ms = []
            for lf in (a, b, leaf):
                m = u.new_marker()
                m.opp, lf.opp = lf, m
                ms.append(m)
            if u.kind == STAR:
                u.centre = ms[0] if a.vertex in nbrs else ms[1]
            u.up = ms[0]
        else:
            raise ValueError("tree already has three or more leaves")
        self.leaves[x] = leaf

    def iter_nodes_from_root(self) -> list[Node]:
        """Nodes in breadth-first order from the root (deterministic)."""
        if self.root is None or not isinstance(self.root.opp, Marker):
            return []
        first = self.root.opp.node
        out = [first]
        seen = {first}
        i = 0
        while i < len(out):
            u = out[i]
            i += 1
            for m in u.markers:
                o = m.opp
                if isinstance(o, Marker) and o.node not in seen:
                    seen.add(o.node)
                    out.append(o.node)
        return out


# ---------------------------------------------------------------- accessibility

def _through(q: Marker) -> set[Leaf]:
    """Leaves accessible from marker ``q`` by first crossing its tree edge."""
    out = set()
    stack = [q]
    while stack:
        m = stack.pop()
        o = m.opp
        if isinstance(o, Leaf):
            out.add(o)
        else:
            stack.extend(o.node.neighbors(o))
    return out


def accessible_leaves(t: SplitTree, q) -> set[Leaf]:
    """A(q): leaves on the far side of ``q``'s tree edge reachable by alternating paths.

    For a leaf this is the set of its neighbours in the represented graph.
    """
    if isinstance(q, Marker):
        return _through(q)
    o = q.opp
    if o is None:
        return set()
    if isinstance(o, Leaf):
        return {o}
    out = set()
    for r in o.node.neighbors(o):
        out |= _through(r)
    return out


def far_leaves(t: SplitTree, q) -> set[Leaf]:
    """L(q): all leaves on the far side of ``q``'s tree edge."""
    if isinstance(q, Leaf):
        return {lf for lf in t.leaves.values() if lf is not q}
    out = set()
    stack = [q]
    while stack:
        m = stack.pop()
        o = m.opp
        if isinstance(o, Leaf):
            out.add(o)
        else:
            stack.extend(r for r in o.node.markers if r is not o)
    return out


def accessibility_adjacency(t: SplitTree) -> dict:
    """Vertex -> set of neighbouring vertices in the represented graph."""
    return {v: {lf.vertex for lf in accessible_leaves(t, leaf)}
            for v, leaf in t.leaves.items()}


def accessibility_graph(t: SplitTree):
    """The represented graph; leaf vertices must be the ints ``0..n-1``."""
    from .graph import Graph
    adj = accessibility_adjacency(t)
    g = Graph(len(adj))
    for v, nb in adj.items():
        for w in nb:
            if v < w:
                g.add_edge(v, w)
    return g


# ---------------------------------------------------------------- join / split

def node_join(t: SplitTree, q: Marker) -> Node:
    """Contract the tree edge at marker ``q``; returns the merged node.

    The node with fewer markers is absorbed into the other one, so the cost
    is proportional to the smaller label (plus the new edges for explicit
    labels).
    """
    r = q.opp
    if not isinstance(q, Marker) or not isinstance(r, Marker):
        raise ValueError("tree edge is incident to a leaf")
    u, v = q.node, r.node
    new_up = v.up if u.up is q else u.up
    if u.kind == CLIQUE and v.kind == CLIQUE:
        kind, centre = CLIQUE, None
    elif u.kind == STAR and v.kind == STAR and (u.centre is q) != (v.centre is r):
        kind = STAR
        centre = v.centre if u.centre is q else u.centre
    else:
        kind, centre = PRIME, None
    big, small = (u, v) if len(u.markers) >= len(v.markers) else (v, u)
    qb, qs = (q, r) if big is u else (r, q)
    if kind == PRIME:
        ab = big.adj if big.kind == PRIME else big.label_adj()
        asm = small.adj if small.kind == PRIME else small.label_adj()
        nb = ab.pop(qb)
        for y in nb:
            ab[y].discard(qb)
        ns = asm.pop(qs)
        for y in ns:
            asm[y].discard(qs)
        ab.update(asm)
        for a in nb:
            sa = ab[a]
            for b in ns:
                sa.add(b)
                ab[b].add(a)
        big.adj = ab
    else:
        big.adj = None
    big.kind = kind
    big.centre = centre
    del big.markers[qb]
    bm = big.markers
    for m in small.markers:
        if m is not qs:
            bm[m] = None
            m.node = big
    big.up = new_up
    big.csc = None
    del t.nodes[small]
    q.node = r.node = None
    return big


def node_split(t: SplitTree, u: Node, part: Iterable[Marker]) -> tuple[Marker, Marker]:
    """Split ``u`` along the bipartition (``part``, rest).

    ``part`` moves to a new node. Returns ``(a, b)`` with ``a`` the new
    marker left in ``u`` and ``b`` its opposite in the new node. The cost is
    proportional to ``len(part)`` for degenerate labels.
    """
    part = list(part)
    pset = set(part)
    if len(pset) != len(part) or not all(m in u.markers for m in part):
        raise ValueError("part must be distinct markers of the node")
    if len(part) < 2 or len(u.markers) - len(part) < 2:
        raise ValueError("not a split: each side needs two markers")
    if u.kind == PRIME:
        adj = u.adj
        front_a = [m for m in part if adj[m] - pset]
        front_b = set()
        for m in front_a:
            front_b |= adj[m] - pset
        fa = set(front_a)
        if any(adj[m] - pset != front_b for m in front_a) or any(adj[m] & pset != fa for m in front_b):
            raise ValueError("not a split")
    nz = t.new_node(u.kind)
    a = u.new_marker()
    b = Marker(nz)
    a.opp, b.opp = b, a
    for m in part:
        del u.markers[m]
        nz.markers[m] = None
        m.node = nz
    nz.markers[b] = None
    if u.kind == STAR:
        if u.centre in pset:
            nz.centre = u.centre
            u.centre = a
        else:
            nz.centre = b
    elif u.kind == PRIME:
        nz.adj = {m: adj[m] & pset for m in part}
        nz.adj[b] = set(front_a)
        for m in front_a:
            nz.adj[m].add(b)
        for m in part:
            del adj[m]
        for m in front_b:
            adj[m] -= pset
            adj[m].add(a)
        adj[a] = set(front_b)
        u.csc = None
    if u.up in pset:
        nz.up = u.up
        u.up = a
    else:
        nz.up = b
    return a, b


# ---------------------------------------------------------------- marking

class Marking:
    """States of the markers relevant to inserting a vertex adjacent to ``S``.

    Only the nodes of T(S), the subtree spanned by ``S``, are examined
    during an insertion. :meth:`state` answers for any marker of the tree,
    walking towards T(S) when needed; that path is used by tests.
    """

    def __init__(self, t: SplitTree, S: list[Leaf]):
        self.tree = t
        self.S = S
        self.sset = set(S)
        self.k = len(S)
        self.states: dict[Marker, str] = {}
        self.leaf_states: dict[Leaf, str] = {}
        self.children: dict[Node, list[Marker]] = {}
        self.cnt: dict[Node, int] = {}
        self.tnodes: list[Node] = []   # parents before children
        self.tset: set[Node] = set()
        self.apex: Node | None = None
        self.mp: dict[Node, list[Marker]] = {}
        self.inmp: set[Marker] = set()
        self.nmix: dict[Node, int] = {}
        self.case: int | None = None
        self.witness = None

    # -- derived sets
    def perfect(self, u: Node) -> list[Marker]:
        st = self.states
        return [m for m in self.mp.get(u, ()) if st[m] == PERFECT]

    def mixed(self, u: Node) -> list[Marker]:
        st = self.states
        return [m for m in self.mp.get(u, ()) if st[m] == MIXED]

    def p_star(self, u: Node) -> list[Marker]:
        return [m for m in self.perfect(u) if not (u.kind == STAR and m is u.centre)]

    def e_star(self, u: Node) -> list[Marker]:
        out = [m for m in u.markers if m not in self.inmp]
        c = u.centre
        if u.kind == STAR and c in self.inmp and self.states.get(c) == PERFECT:
            out.append(c)
        return out

    # -- the local rule
    def _opp_state(self, z: Node, m: Marker, m_in: bool) -> str:
        """State of the extremity opposite ``m`` given the states inside ``z``."""
        mp = self.mp[z]
        others = len(mp) - (1 if m_in else 0)
        if others == 0:
            return EMPTY
        mix = self.nmix[z] - (1 if m_in and self.states[m] == MIXED else 0)
        if mix:
            return MIXED
        if z.kind == CLIQUE:
            ok = others == len(z.markers) - 1
        elif z.kind == STAR:
            if m is z.centre:
                ok = others == len(z.markers) - 1
            else:
                ok = others == 1 and z.centre in self.inmp
        else:
            nb = z.adj[m]
            inmp = self.inmp
            ok = len(nb) == others and all(o in inmp for o in nb)
        return PERFECT if ok else MIXED

    # -- generic queries (test-grade, may walk far)
    def _mp_any(self, z: Node) -> list[Marker]:
        if z in self.tset:
            return self.mp[z]
        ch = self.children.get(z)
        if ch:
            return ch
        return [z.up]

    def state(self, q: Marker) -> str:
        st = self.states.get(q)
        if st is not None:
            return st
        o = q.opp
        if isinstance(o, Leaf):
            return PERFECT if o in self.sset else EMPTY
        if q.node in self.tset or q not in self._mp_any(q.node):
            return EMPTY
        return self._state_via(o.node, o)

    def leaf_state(self, leaf: Leaf) -> str:
        st = self.leaf_states.get(leaf)
        if st is not None:
            return st
        o = leaf.opp
        if isinstance(o, Leaf):
            return PERFECT if o in self.sset else EMPTY
        return self._state_via(o.node, o)

    def _state_via(self, z: Node, m: Marker) -> str:
        mp = [x for x in self._mp_any(z) if x is not m]
        if not mp:
            return EMPTY
        sts = [self.state(x) for x in mp]
        if MIXED in sts:
            return MIXED
        return PERFECT if set(z.neighbors(m)) == set(mp) else MIXED

    # -- classification
    def classify(self) -> tuple[int, object]:
        """Return ``(case, witness)``.

        When several cases hold at once the first in the order 7, 1, 2,
        then 5/6 (a tree edge with no mixed extremity), then 3/4 (the hybrid
        node) wins.
        """
        if self.case is not None:
            return self.case, self.witness
        st = self.states
        tm = []
        for w in self.tnodes:
            if w is self.apex:
                continue
            up = w.up
            if isinstance(up.opp, Marker) and st[up] == MIXED and st[up.opp] == MIXED:
                tm.append(up)
        if tm:
            return self._set(7, tm)
        for z in self.tnodes:
            if z.kind == CLIQUE and self.nmix[z] == 0 and len(self.mp[z]) == len(z.markers):
                return self._set(1, z)
        if self.k == 1:
            s = self.S[0]
            q = s.opp
            if q.node.kind == STAR and q.node.centre is q:
                return self._set(2, q.node)
            return self._set(6, (q, PERFECT, EMPTY))
        boundary = []
        for z in self.tnodes:
            if self.nmix[z] == 0:
                e = self._boundary_empty(z)
                if e is not None:
                    boundary.append(e)
        for e in boundary:
            p = e.opp
            if isinstance(p, Marker) and p.node.kind == STAR and p.node.centre is p:
                return self._set(2, p.node)
        for w in self.tnodes:
            if w is self.apex:
                continue
            up = w.up
            o = up.opp
            so = st[o] if isinstance(o, Marker) else self.leaf_states[o]
            if st[up] == PERFECT and so == PERFECT:
                return self._set(5, (up, PERFECT, PERFECT))
        for s in self.S:
            q = s.opp
            if self.leaf_states[s] == PERFECT:
                return self._set(5, (q, PERFECT, PERFECT))
        if boundary:
            return self._set(6, (boundary[0], EMPTY, PERFECT))
        for z in self.tnodes:
            if self.nmix[z] == 0:
                return self._set(3 if z.kind == PRIME else 4, z)
        raise AssertionError("no insertion case applies")

    def _set(self, case: int, witness) -> tuple[int, object]:
        self.case, self.witness = case, witness
        return case, witness

    def _boundary_empty(self, z: Node) -> Marker | None:
        """An empty marker of ``z`` adjacent to exactly the (all perfect) MP(z)."""
        mp = self.mp[z]
        inmp = self.inmp
        if z.kind == CLIQUE:
            if len(z.markers) - len(mp) == 1:
                for m in z.markers:
                    if m not in inmp:
                        return m
            return None
        if z.kind == STAR:
            c = z.centre
            if c not in inmp and len(mp) == len(z.markers) - 1:
                return c
            return None
        adj = z.adj
        p = min(mp, key=lambda x: len(adj[x]))
        k = len(mp)
        for e in adj[p]:
            if e not in inmp and len(adj[e]) == k and all(o in inmp for o in adj[e]):
                return e
        return None


def mark(t: SplitTree, S: Iterable) -> Marking:
    """Compute marker states for ``S`` (vertex ids or leaves) on T(S).

    Walks up from each leaf of ``S`` until an already visited node, then
    settles states bottom-up (markers pointing down) and top-down (markers
    pointing up). Cost is linear in the number of visited nodes plus the
    label work at nodes of T(S).
    """
    leaves = [s if isinstance(s, Leaf) else t.leaves[s] for s in S]
    if not leaves:
        raise ValueError("S must be nonempty")
    mk = Marking(t, leaves)
    k = mk.k
    root = t.root
    children = mk.children
    order = []
    for s in leaves:
        if s is root:
            continue
        m = s.opp
        while True:
            z = m.node
            lst = children.get(z)
            if lst is not None:
                lst.append(m)
                break
            children[z] = [m]
            order.append(z)
            o = z.up.opp
            if isinstance(o, Leaf):
                break
            m = o
    pending = {}
    for z in order:
        pending[z] = sum(1 for m in children[z] if isinstance(m.opp, Marker))
    queue = deque(z for z in order if pending[z] == 0)
    cnt = mk.cnt
    st = mk.states
    mpd = mk.mp
    nmix = mk.nmix
    inmp = mk.inmp
    tnodes_bu = []
    while queue:
        z = queue.popleft()
        c = 0
        mix = 0
        for m in children[z]:
            o = m.opp
            if isinstance(o, Leaf):
                c += 1
                st[m] = PERFECT
            else:
                c += cnt[o.node]
                if st.get(m) == MIXED:
                    mix += 1
        cnt[z] = c
        ch = children[z]
        in_t = c < k or len(ch) >= 2
        if in_t:
            mk.tset.add(z)
            tnodes_bu.append(z)
            mp = list(ch)
            if c < k:
                mp.append(z.up)
            else:
                mk.apex = z
            mpd[z] = mp
            inmp.update(mp)
            nmix[z] = mix
            if c < k:
                o = z.up.opp
                if isinstance(o, Marker):
                    st[o] = _bottom_up_state(mk, z)
        o = z.up.opp
        if isinstance(o, Marker):
            p = o.node
            pending[p] -= 1
            if pending[p] == 0:
                queue.append(p)
    tnodes = tnodes_bu[::-1]
    mk.tnodes = tnodes
    if root in mk.sset and tnodes:
        st[tnodes[0].up] = PERFECT
    for z in tnodes:
        if z is not mk.apex:
            if st[z.up] == MIXED:
                nmix[z] += 1
        for m in children[z]:
            s = mk._opp_state(z, m, True)
            o = m.opp
            if isinstance(o, Leaf):
                mk.leaf_states[o] = s
            else:
                st[o] = s
    if root in mk.sset:
        if tnodes:
            z = tnodes[0]
            mk.leaf_states[root] = mk._opp_state(z, z.up, True)
    if k == 1:
        s = leaves[0]
        st[s.opp] = PERFECT
        mk.leaf_states[s] = EMPTY
    return mk


def _bottom_up_state(mk: Marking, w: Node) -> str:
    """State of the parent-side marker facing ``w`` (only children of ``w`` matter)."""
    ch = mk.children[w]
    if mk.nmix[w]:
        return MIXED
    others = len(ch)
    up = w.up
    if w.kind == CLIQUE:
        ok = others == len(w.markers) - 1
    elif w.kind == STAR:
        if up is w.centre:
            ok = others == len(w.markers) - 1
        else:
            ok = others == 1 and ch[0] is w.centre
    else:
        nb = w.adj[up]
        ok = len(nb) == others and all(o in nb for o in ch)
    return PERFECT if ok else MIXED


# ---------------------------------------------------------------- updates

class InsertionHooks(Protocol):
    """Callbacks through which the recognizer mirrors tree updates on diagrams."""

    def extend_prime(self, u: Node, perfect: list[Marker], q: Marker) -> None: ...

    def prepare(self, mk: Marking, nodes: list[Node]) -> None: ...

    def join(self, u: Node, q: Marker, v: Node, r: Marker, merged: Node) -> None: ...

    def finish(self, u: Node, perfect: list[Marker], q: Marker) -> None: ...


def _attach(q: Marker, leaf: Leaf) -> None:
    q.opp, leaf.opp = leaf, q


def _subdivide(t: SplitTree, p: Marker, st_p: str, st_o: str, leaf: Leaf) -> Node:
    """Put a ternary node on the edge at ``p`` and hang ``leaf`` from it.

    ``st_p`` is the state of ``p`` and ``st_o`` that of its opposite.
    """
    o = p.opp
    node_is_below = p.node.up is not p
    kind = CLIQUE if st_p == PERFECT and st_o == PERFECT else STAR
    v = t.new_node(kind)
    m_p = v.new_marker()
    m_o = v.new_marker()
    m_x = v.new_marker()
    m_p.opp, p.opp = p, m_p
    m_o.opp, o.opp = o, m_o
    _attach(m_x, leaf)
    if kind == STAR:
        v.centre = m_o if st_p == PERFECT else m_p
    v.up = m_p if node_is_below else m_o
    return v


def _add_leaf_marker(u: Node, leaf: Leaf, nbrs: list[Marker]) -> Marker:
    q = u.new_marker()
    _attach(q, leaf)
    if u.kind == PRIME:
        u.adj[q] = set(nbrs)
        for p in nbrs:
            u.adj[p].add(q)
    return q


def clean(t: SplitTree, mk: Marking) -> list[Node]:
    """Split perfect and empty parts off the degenerate nodes of T_m.

    Returns the nodes of T_m after cleaning (order of first appearance).
    """
    case, tm = mk.classify()
    if case != 7:
        raise ValueError("cleaning applies only to case 7")
    st = mk.states
    out = []
    for z in _tm_nodes(tm):
        if z.kind == PRIME:
            out.append(z)
            continue
        ps = mk.p_star(z)
        if len(ps) >= 2 and len(z.markers) - len(ps) >= 2:
            a, b = node_split(t, z, ps)
            st[a] = PERFECT
            st[b] = MIXED
            mk.inmp.add(a)
            mk.inmp.add(b)
            pset = set(ps)
            mk.mp[z] = [m for m in mk.mp[z] if m not in pset] + [a]
            mk.mp[b.node] = ps + [b]
            mk.nmix[b.node] = 1
        es = mk.e_star(z)
        if len(es) >= 2 and len(z.markers) - len(es) >= 2:
            eset = set(es)
            rest = [m for m in mk.mp[z] if m not in eset]
            centre = z.centre
            a, b = node_split(t, z, rest)
            nz = b.node
            if z.kind == STAR and nz.centre is b:
                sb = st[centre] if centre in mk.inmp else EMPTY
            else:
                sb = EMPTY
            st[a] = MIXED
            mk.inmp.add(a)
            mk.mp[nz] = rest + ([b] if sb == PERFECT else [])
            if sb == PERFECT:
                st[b] = PERFECT
                mk.inmp.add(b)
            else:
                st[b] = EMPTY
            mk.nmix[nz] = mk.nmix[z]
            mk.mp[z] = [a]
            mk.nmix[z] = 1
            out.append(nz)
        else:
            out.append(z)
    return out


def _tm_nodes(tm: list[Marker]) -> list[Node]:
    seen = {}
    for m in tm:
        seen.setdefault(m.node, None)
        seen.setdefault(m.opp.node, None)
    return list(seen)


def contract_fully_mixed(t: SplitTree, mk: Marking, join_hook=None) -> Node:
    """Contract the fully mixed subtree into one node, deepest edges first."""
    case, tm = mk.classify()
    children = {m.node for m in tm}
    parent_of = {m.opp.node: None for m in tm}
    roots = [z for z in parent_of if z not in children]
    if len(roots) != 1:
        raise AssertionError("fully mixed edges do not form a tree")
    below: dict[Node, list[Marker]] = {}
    for m in tm:
        below.setdefault(m.opp.node, []).append(m)
    depth_order = []
    frontier = [roots[0]]
    while frontier:
        nxt = []
        for z in frontier:
            for m in below.get(z, ()):
                depth_order.append(m)
                nxt.append(m.node)
        frontier = nxt
    u = roots[0]
    for m in reversed(depth_order):
        q = m.opp
        pu, cv = q.node, m.node
        merged = node_join(t, q)
        if join_hook is not None:
            join_hook(pu, q, cv, m, merged)
        u = merged
    return u


def insert_vertex_structure(t: SplitTree, x, mk: Marking, hooks: InsertionHooks | None = None) -> Leaf:
    """Insert vertex ``x`` adjacent to the leaves marked in ``mk``."""
    if x in t.leaves:
        raise ValueError(f"vertex {x!r} already present")
    case, wit = mk.classify()
    leaf = Leaf(x)
    st = mk.states
    if case in (1, 2):
        _add_leaf_marker(wit, leaf, [])
    elif case == 3:
        u = wit
        perfect = mk.perfect(u)
        q = Marker(u)
        if hooks is not None:
            hooks.extend_prime(u, perfect, q)
        u.markers[q] = None
        _attach(q, leaf)
        u.adj[q] = set(perfect)
        for p in perfect:
            u.adj[p].add(q)
    elif case == 4:
        u = wit
        ps = mk.p_star(u)
        centre_perfect = u.kind == STAR and u.centre in mk.inmp
        a, b = node_split(t, u, ps)
        _subdivide(t, a, PERFECT, PERFECT if centre_perfect else EMPTY, leaf)
    elif case in (5, 6):
        p, sp, so = wit
        _subdivide(t, p, sp, so, leaf)
    else:
        nodes = clean(t, mk)
        perfect = []
        for z in nodes:
            perfect.extend(m for m in mk.mp[z] if st[m] == PERFECT)
        if hooks is not None:
            hooks.prepare(mk, nodes)
            u = contract_fully_mixed(t, mk, hooks.join)
        else:
            u = contract_fully_mixed(t, mk)
        if u.kind != PRIME:
            u.adj = u.label_adj()
            u.kind = PRIME
            u.centre = None
        q = Marker(u)
        if hooks is not None:
            hooks.finish(u, perfect, q)
        u.markers[q] = None
        _attach(q, leaf)
        u.adj[q] = set(perfect)
        for p in perfect:
            u.adj[p].add(q)
    t.leaves[x] = leaf
    return leaf


def insert_vertex(t: SplitTree, x, nbrs: Iterable, hooks: InsertionHooks | None = None) -> int:
    """Add ``x`` with the given neighbours; returns the case used (0 for bootstrap)."""
    nbrs = list(nbrs)
    if len(t.leaves) < 3:
        t.add_first_vertices(x, nbrs)
        return 0
    mk = mark(t, sorted(nbrs) if all(isinstance(v, int) for v in nbrs) else nbrs)
    case, _ = mk.classify()
    insert_vertex_structure(t, x, mk, hooks)
    return case


# ---------------------------------------------------------------- validation

def validate_split_tree(t: SplitTree, g=None, reduced: bool = True, prime_check_limit: int = 12) -> list[str]:
    """List every violated invariant (empty when the tree is a valid split tree of ``g``).

    ``g`` may be a :class:`~circlegraph.graph.Graph` or an adjacency dict.
    """
    from .oracle import label_is_prime
    errs: list[str] = []
    leaves = list(t.leaves.values())
    for v, lf in t.leaves.items():
        if lf.vertex != v:
            errs.append(f"leaf for {v!r} records vertex {lf.vertex!r}")
        o = lf.opp
        if len(leaves) > 1 and (o is None or o.opp is not lf):
            errs.append(f"leaf {v!r} has a broken opposite")
    for u in t.nodes:
        if len(u.markers) < 3:
            errs.append(f"node n{u.uid} has degree {len(u.markers)}")
        for m in u.markers:
            if m.node is not u:
                errs.append(f"marker {m} has wrong owner")
            if m.opp is None or m.opp.opp is not m:
                errs.append(f"marker {m} has a broken opposite")
            elif isinstance(m.opp, Marker) and m.opp.node not in t.nodes:
                errs.append(f"marker {m} points into a dropped node")
        if u.kind == STAR and u.centre not in u.markers:
            errs.append(f"star n{u.uid} has an invalid centre")
        if u.kind == PRIME:
            if u.adj is None or set(u.adj) != set(u.markers):
                errs.append(f"prime n{u.uid} adjacency keys differ from markers")
                continue
            for a, nb in u.adj.items():
                for b in nb:
                    if a not in u.adj.get(b, ()):
                        errs.append(f"prime n{u.uid} adjacency not symmetric")
            if not _label_connected(u):
                errs.append(f"label of n{u.uid} is disconnected")
    if errs:
        return errs
    # tree shape and up markers
    if t.nodes:
        if t.root is None or not isinstance(t.root.opp, Marker):
            return errs + ["root leaf is not attached to a node"]
        seen = set()
        first = t.root.opp.node
        if first.up is not t.root.opp:
            errs.append("root node has a wrong up marker")
        stack = [first]
        seen.add(first)
        leaf_hits = 0
        while stack:
            u = stack.pop()
            for m in u.markers:
                o = m.opp
                if isinstance(o, Leaf):
                    leaf_hits += 1
                    continue
                w = o.node
                if m is u.up:
                    continue
                if w in seen:
                    errs.append("tree has a cycle")
                    continue
                if w.up is not o:
                    errs.append(f"node n{w.uid} has a wrong up marker")
                seen.add(w)
                stack.append(w)
        if len(seen) != len(t.nodes):
            errs.append("tree is disconnected")
        if leaf_hits != len(leaves):
            errs.append("leaf count mismatch")
    if errs:
        return errs
    for u in t.nodes:
        for m in u.markers:
            o = m.opp
            if not isinstance(o, Marker) or m.uid > o.uid:
                continue
            w = o.node
            if reduced:
                if u.kind == CLIQUE and w.kind == CLIQUE:
                    errs.append(f"clique nodes n{u.uid} and n{w.uid} are adjacent")
                if u.kind == STAR and w.kind == STAR and (u.centre is m) != (w.centre is o):
                    errs.append(f"star centre faces a star leaf between n{u.uid} and n{w.uid}")
        if reduced and u.kind == PRIME:
            if len(u.markers) < 5:
                errs.append(f"prime node n{u.uid} has fewer than five markers")
            elif len(u.markers) <= prime_check_limit and not label_is_prime(u.label_adj()):
                errs.append(f"prime node n{u.uid} has a split")
    if g is not None:
        target = _as_adj(g)
        acc = accessibility_adjacency(t)
        if acc != target:
            errs.append("accessibility graph differs from the graph")
        else:
            for u in t.nodes:
                for m in u.markers:
                    o = m.opp
                    if isinstance(o, Marker) and m.uid < o.uid:
                        errs.extend(_check_edge_split(t, m, acc))
    return errs


def _label_connected(u: Node) -> bool:
    ms = list(u.markers)
    seen = {ms[0]}
    stack = [ms[0]]
    while stack:
        a = stack.pop()
        for b in u.neighbors(a):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(ms)


def _as_adj(g) -> dict:
    if isinstance(g, dict):
        return {v: set(nb) for v, nb in g.items()}
    return {v: set(g.adj[v]) for v in range(g.n)}


def _check_edge_split(t: SplitTree, p: Marker, adj: dict) -> list[str]:
    q = p.opp
    side_p = {lf.vertex for lf in far_leaves(t, p)}
    side_q = {lf.vertex for lf in far_leaves(t, q)}
    fa = {lf.vertex for lf in accessible_leaves(t, p)}
    fb = {lf.vertex for lf in accessible_leaves(t, q)}
    if len(side_p) < 2 or len(side_q) < 2:
        return [f"edge at {p} does not separate two leaves on each side"]
    cross = {(a, b) for a in side_p for b in adj[a] if b in side_q}
    if cross != {(a, b) for a in fa for b in fb}:
        return [f"edge at {p} is not a split with frontiers A(p), A(q)"]
    return []


def dump(t: SplitTree, names=None) -> list[str]:
    """Deterministic text listing of nodes and tree edges."""
    name = (lambda v: str(names[v])) if names is not None else str
    lines = []
    order = t.iter_nodes_from_root()
    ids = {u: i for i, u in enumerate(order)}
    mids = {}
    for u in order:
        for m in u.markers:
            mids[m] = f"{ids[u]}.{len(mids)}"
    for u in order:
        kind = u.kind
        if u.kind == STAR:
            kind = f"star centre={mids[u.centre]}"
        ms = ",".join(mids[m] for m in u.markers)
        lines.append(f"node {ids[u]} kind={kind} markers=[{ms}]")
    for u in order:
        for m in u.markers:
            o = m.opp
            if isinstance(o, Leaf):
                lines.append(f"edge {mids[m]} -- leaf {name(o.vertex)}")
            elif ids[u] < ids[o.node]:
                lines.append(f"edge {mids[m]} -- {mids[o]}")
    if not order:
        vs = list(t.leaves)
        if len(vs) == 2:
            lines.append(f"edge leaf {name(vs[0])} -- leaf {name(vs[1])}")
        for v in vs[:1] if len(vs) == 1 else ():
            lines.append(f"leaf {name(v)}")
    return lines


def to_dot(t: SplitTree, names=None) -> str:
    name = (lambda v: str(names[v])) if names is not None else str
    order = t.iter_nodes_from_root()
    ids = {u: i for i, u in enumerate(order)}
    out = ["graph splittree {"]
    for u in order:
        out.append(f'  n{ids[u]} [shape=box,label="{u.kind} ({len(u.markers)})"];')
    for v in t.leaves:
        out.append(f'  "v_{name(v)}" [shape=circle,label="{name(v)}"];')
    for u in order:
        for m in u.markers:
            o = m.opp
            if isinstance(o, Leaf):
                out.append(f'  n{ids[u]} -- "v_{name(o.vertex)}";')
            elif ids[u] < ids[o.node]:
                out.append(f"  n{ids[u]} -- n{ids[o.node]};")
    if not order and len(t.leaves) == 2:
        a, b = list(t.leaves)
        out.append(f'  "v_{name(a)}" -- "v_{name(b)}";')
    out.append("}")
    return "\n".join(out)
