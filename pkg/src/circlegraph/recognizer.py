"""Circle graph recognition by incremental split-tree maintenance.

Vertices of each component are inserted in one LBFS order. Prime nodes of
the split tree carry a chord diagram (a :class:`~circlegraph.csc.CSC`);
whenever the tree needs a new prime node or grows one, the matching chord
diagram operation must succeed, otherwise the graph is not a circle graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .chords import Word, chords_of, clique_word, crossing_pairs, interlacement, relabel_indices, star_word
from .csc import (PLUS, Arena, build_degenerate_diagram, check_consistent, circle_join,
                  consecutive_test_prime, csc_from_word, insert_chord, join_plain)
from .graph import Graph, connected_components, induced_subgraph, is_lbfs, lbfs
from .splittree import (CLIQUE, PRIME, Marker, Marking, Node, SplitTree, insert_vertex,
                        validate_split_tree)


class NotCircleError(Exception):
    """Raised inside an insertion when no chord diagram can be extended."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


@dataclass
class Circle:
    diagram: Word
    components: list[Word] = field(default_factory=list)

    def __bool__(self) -> bool:
        return True


@dataclass
class NotCircle:
    failed_vertex: int
    failed_node_info: str
    step: int = 0
    prefix: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return False


Outcome = Circle | NotCircle


class _DiagramHooks:
    """Mirror the tree updates of one insertion on the prime-node diagrams."""

    def __init__(self, arena: Arena):
        self.arena = arena
        self.pending: dict[Node, tuple] = {}

    def extend_prime(self, u: Node, perfect: list[Marker], q: Marker) -> None:
        w = consecutive_test_prime(u.csc, set(perfect))
        if w is None:
            raise NotCircleError(f"perfect markers of a prime node with {len(u.markers)} markers are not consecutive")
        insert_chord(u.csc, w, q)

    def prepare(self, mk: Marking, nodes: list[Node]) -> None:
        self.pending = {}
        for z in nodes:
            mp = mk.mp[z]
            mixed = mk.mixed(z)
            if len(mixed) > 2:
                raise NotCircleError(f"{z.kind} node with {len(mixed)} mixed markers")
            if z.kind == PRIME:
                w = consecutive_test_prime(z.csc, set(mp), mixed)
                if w is None:
                    raise NotCircleError(f"prime node with {len(z.markers)} markers fails the consecutiveness test")
                self.pending[z] = (z.csc, w)
            else:
                res = build_degenerate_diagram(self.arena, z.kind, list(z.markers), z.centre, mp, mixed)
                if res is None:
                    raise NotCircleError(f"{z.kind} node admits no diagram with the marked set consecutive")
                self.pending[z] = res

    def join(self, u: Node, q: Marker, v: Node, r: Marker, merged: Node) -> None:
        cu, wu = self.pending.pop(u)
        cv, wv = self.pending.pop(v)
        c, w = circle_join(cu, q, wu, cv, r, wv)
        merged.csc = c
        self.pending[merged] = (c, w)

    def finish(self, u: Node, perfect: list[Marker], q: Marker) -> None:
        c, w = self.pending.pop(u)
        insert_chord(c, w, q)
        u.csc = c
        self.pending = {}


class Recognizer:
    """Incremental state for one connected graph.

    Feed vertices with :meth:`insert_vertex` in an LBFS order of the final
    graph. After a failed insertion the state is poisoned.
    """

    def __init__(self):
        self.tree = SplitTree()
        self.arena = Arena()
        self.hooks = _DiagramHooks(self.arena)
        self.inserted: list = []
        self.live = True
        self.failure: tuple | None = None
        self.last_case = 0

    def insert_vertex(self, x, nbrs) -> bool:
        if not self.live:
            raise RuntimeError("recognizer already rejected an insertion")
        try:
            self.last_case = insert_vertex(self.tree, x, nbrs, self.hooks)
        except NotCircleError as e:
            self.live = False
            self.failure = (x, e.detail)
            return False
        self.inserted.append(x)
        return True

    def extract_diagram(self) -> Word:
        """A diagram of the graph inserted so far (leaf vertices as chord names)."""
        t = self.tree
        if not t.nodes:
            vs = list(t.leaves)
            if len(vs) == 1:
                return [(vs[0], 1), (vs[0], 2)]
            if len(vs) == 2:
                return [(vs[0], 1), (vs[1], 1), (vs[0], 2), (vs[1], 2)]
            return []
        ar = self.arena.copy()
        order = t.iter_nodes_from_root()
        for u in order:
            if u.kind == PRIME:
                continue
            ms = list(u.markers)
            if u.kind == CLIQUE:
                csc_from_word(clique_word(ms), ar)
            else:
                csc_from_word(star_word(u.centre, [m for m in ms if m is not u.centre]), ar)
        for u in order:
            for m in u.markers:
                o = m.opp
                if isinstance(o, Marker) and o.node.up is o:
                    join_plain(ar, m, o)
        start = ar.ends[t.root.opp][0]
        word = [(ar.chord[e].opp.vertex, ar.index[e]) for e in ar.cycle(start, PLUS)]
        return relabel_indices(word)

    def check_state(self, g=None) -> list[str]:
        """Tree invariants plus diagram consistency at every prime node."""
        errs = validate_split_tree(self.tree, g)
        for u in self.tree.nodes:
            if u.kind != PRIME:
                continue
            if u.csc is None:
                errs.append(f"prime node n{u.uid} has no diagram")
                continue
            if not check_consistent(u.csc):
                errs.append(f"diagram of n{u.uid} is inconsistent")
                continue
            w = u.csc.word()
            if set(chords_of(w)) != set(u.markers) or interlacement(w) != u.adj:
                errs.append(f"diagram of n{u.uid} does not encode its label")
        return errs


def recognize(g: Graph, order_of: Callable[[Graph], Sequence[int]] | None = None,
              observer: Callable[[Recognizer, Graph, list[int]], None] | None = None,
              check_order: bool = False) -> Outcome:
    """Decide whether ``g`` is a circle graph.

    Each component is handled on its own and the component diagrams are
    concatenated. ``order_of`` may supply the insertion order of a
    (renumbered) component; it must be an LBFS order, which is checked when
    ``check_order`` is set. ``observer`` is called after every successful
    insertion with the recognizer, the component and the inserted prefix.
    """
    words = []
    for comp in connected_components(g):
        h, remap = induced_subgraph(g, comp)
        back = sorted(comp)
        order = list(order_of(h)) if order_of is not None else list(lbfs(h, 0).order)
        if check_order and not is_lbfs(h, order):
            raise ValueError("insertion order is not an LBFS ordering")
        rec = Recognizer()
        placed = set()
        for i, v in enumerate(order):
            nbrs = sorted(w for w in h.adj[v] if w in placed)
            if not rec.insert_vertex(v, nbrs):
                return NotCircle(back[v], rec.failure[1], i, [back[o] for o in order[:i + 1]])
            placed.add(v)
            if observer is not None:
                observer(rec, h, order[:i + 1])
        words.append([(back[c], k) for c, k in rec.extract_diagram()])
    whole = [tok for w in words for tok in w]
    if not certify(g, whole):
        raise AssertionError("extracted diagram does not encode the graph")
    return Circle(whole, words)


def certify(g: Graph, word: Word) -> bool:
    """True iff ``word`` is a diagram on exactly the vertices of ``g`` encoding ``g``."""
    seen: dict = {}
    for c, i in word:
        seen.setdefault(c, set()).add(i)
        if i not in (1, 2):
            return False
    if set(seen) != set(range(g.n)) or any(s != {1, 2} for s in seen.values()):
        return False
    if len(word) != 2 * g.n:
        return False
    m = 0
    for a, b in crossing_pairs(word):
        if b not in g.adj[a]:
            return False
        m += 1
    return m == g.m


def extract_diagram(rec: Recognizer) -> Word:
    return rec.extract_diagram()


def prefix_graph(h: Graph, prefix: Sequence[int]) -> Graph:
    return induced_subgraph(h, prefix)[0]
