"""Consistent symmetric cycles: a reflection-free encoding of chord diagrams.

All endpoints live in one :class:`Arena`. Each endpoint has two link slots,
``plus`` (slot 0) and ``minus`` (slot 1), pointing at its two neighbours on
the cycle; which neighbour sits in which slot carries no orientation. The
cycle is *consistent* when, for every chord, the plus links of both
endpoints point into the same one of the two arcs the chord cuts the cycle
into. A chord whose endpoints are adjacent counts the empty arc: its plus
links then point at each other.

Splicing only reassigns the slot that pointed at a removed endpoint, so the
side a slot faces never changes and consistency survives every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .chords import Token, Word, check_word, degenerate_words, find_factor

PLUS, MINUS = 0, 1


class Arena:
    """Flat endpoint storage shared by every diagram of one recognizer."""

    __slots__ = ("plus", "minus", "links", "mate", "chord", "index", "ends")

    def __init__(self):
        self.plus: list[int] = []
        self.minus: list[int] = []
        self.links = (self.plus, self.minus)
        self.mate: list[int] = []
        self.chord: list[Hashable] = []
        self.index: list[int] = []
        self.ends: dict[Hashable, tuple[int, int]] = {}

    def new_chord(self, label: Hashable) -> tuple[int, int]:
        if label in self.ends:
            raise ValueError(f"chord {label!r} already present")
        e1 = len(self.mate)
        e2 = e1 + 1
        self.plus += [e2, e1]
        self.minus += [e2, e1]
        self.mate += [e2, e1]
        self.chord += [label, label]
        self.index += [1, 2]
        self.ends[label] = (e1, e2)
        return e1, e2

    def slot_to(self, e: int, target: int) -> int:
        """Which slot of ``e`` points at ``target``."""
        if self.plus[e] == target:
            return PLUS
        if self.minus[e] == target:
            return MINUS
        raise ValueError(f"endpoint {e} is not linked to {target}")

    def cycle(self, start: int, slot: int = PLUS) -> list[int]:
        """Endpoints around the cycle, leaving ``start`` through ``slot``."""
        plus, minus = self.plus, self.minus
        out = [start]
        prev, cur = start, self.links[slot][start]
        while cur != start:
            out.append(cur)
            p = plus[cur]
            nxt = minus[cur] if p == prev else p
            prev, cur = cur, nxt
        return out

    def copy(self) -> "Arena":
        a = Arena.__new__(Arena)
        a.plus = list(self.plus)
        a.minus = list(self.minus)
        a.links = (a.plus, a.minus)
        a.mate = list(self.mate)
        a.chord = list(self.chord)
        a.index = list(self.index)
        a.ends = dict(self.ends)
        return a


class CSC:
    """One diagram in an arena, read from an anchor endpoint through a slot.

    Flipping the anchor slot reads the reversed diagram; no links change.
    """

    __slots__ = ("arena", "anchor", "slot", "size")

    def __init__(self, arena: Arena, anchor: int, slot: int, size: int):
        self.arena = arena
        self.anchor = anchor
        self.slot = slot
        self.size = size

    def endpoints(self) -> list[int]:
        return self.arena.cycle(self.anchor, self.slot)

    def word(self) -> Word:
        return word_from_csc(self)

    def reflected(self) -> "CSC":
        return CSC(self.arena, self.anchor, 1 - self.slot, self.size)

    def chords(self) -> list:
        ar = self.arena
        seen, out = set(), []
        for e in self.endpoints():
            c = ar.chord[e]
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out

    def __repr__(self) -> str:
        return f"CSC(size={self.size})"


@dataclass(frozen=True)
class Witness:
    """A factor of a diagram: ``start`` .. ``end``, ``length`` endpoints long.

    ``start_in`` and ``end_in`` are the inner neighbours of the two ends and
    are ``None`` for a one-endpoint factor.
    """

    start: int
    start_in: int | None
    end: int
    end_in: int | None
    length: int

    def endpoints(self, arena: Arena) -> list[int]:
        if self.length == 1:
            return [self.start]
        out = [self.start]
        prev, cur = self.start, self.start_in
        while len(out) < self.length:
            out.append(cur)
            p = arena.plus[cur]
            nxt = arena.minus[cur] if p == prev else p
            prev, cur = cur, nxt
        return out

    def tokens(self, arena: Arena) -> list[Token]:
        return [(arena.chord[e], arena.index[e]) for e in self.endpoints(arena)]

    def bookends(self, arena: Arena) -> set:
        return {arena.chord[self.start], arena.chord[self.end]}


def csc_from_word(word: Sequence[Token], arena: Arena | None = None) -> CSC:
    """Build a consistent cycle for ``word`` and anchor it at the first token.

    At each chord's first occurrence the plus link points forward; at the
    second it points backward, so both face the arc between them.
    """
    check_word(word)
    if arena is None:
        arena = Arena()
    ends = {}
    for c, _ in word:
        if c not in ends:
            ends[c] = arena.new_chord(c)
    eps = [ends[c][i - 1] for c, i in word]
    n = len(eps)
    first = set()
    for p, e in enumerate(eps):
        nxt, prv = eps[(p + 1) % n], eps[p - 1]
        c = word[p][0]
        if c in first:
            arena.plus[e], arena.minus[e] = prv, nxt
        else:
            first.add(c)
            arena.plus[e], arena.minus[e] = nxt, prv
    return CSC(arena, eps[0], PLUS, len(ends))


def word_from_csc(c: CSC) -> Word:
    ar = c.arena
    eps = c.endpoints()
    if len(eps) != 2 * c.size:
        raise ValueError("cycle length does not match chord count")
    return [(ar.chord[e], ar.index[e]) for e in eps]


def check_consistent(c: CSC) -> bool:
    """True iff the cycle is symmetric and every chord is consistent; O(n)."""
    ar = c.arena
    eps = c.endpoints()
    n = len(eps)
    if n != 2 * c.size:
        return False
    pos = {e: i for i, e in enumerate(eps)}
    for i, e in enumerate(eps):
        if {ar.plus[e], ar.minus[e]} != {eps[(i + 1) % n], eps[i - 1]}:
            return False
        if ar.mate[e] not in pos or ar.mate[ar.mate[e]] != e:
            return False
    for i, a in enumerate(eps):
        j = pos[ar.mate[a]]
        if j < i:
            continue
        b = eps[j]
        a_in = pos[ar.plus[a]] == (i + 1) % n
        b_in = pos[ar.plus[b]] == (j - 1) % n
        if n > 2 and a_in != b_in:
            return False
    return True


def plus_walk(arena: Arena, y1: int, y2: int) -> list[int]:
    """Endpoints met walking from ``y1`` through its plus link up to ``y2``."""
    out = []
    prev, cur = y1, arena.plus[y1]
    while cur != y2:
        out.append(cur)
        p = arena.plus[cur]
        nxt = arena.minus[cur] if p == prev else p
        prev, cur = cur, nxt
    return out


def _run(ar: Arena, e: int, first: int, members, limit: int) -> list[int]:
    out = []
    plus, minus, chord = ar.plus, ar.minus, ar.chord
    prev, cur = e, first
    while len(out) < limit and cur != e and chord[cur] in members:
        out.append(cur)
        p = plus[cur]
        nxt = minus[cur] if p == prev else p
        prev, cur = cur, nxt
    return out


def consecutive_test_prime(c: CSC, mp: Iterable, mixed: Iterable = ()) -> Witness | None:
    """Find a factor with one endpoint per chord of ``mp`` and mixed chords at its ends.

    Only endpoints whose chords lie in ``mp`` are visited, at most
    ``2|mp|`` of them per starting endpoint, so the cost is O(|mp|).
    """
    ar = c.arena
    members = mp if isinstance(mp, (set, frozenset, dict)) else set(mp)
    mixed = list(mixed)
    k = len(members)
    if k == 0 or len(mixed) > 2:
        return None
    q = mixed[0] if mixed else next(iter(members))
    chord = ar.chord
    for e in ar.ends[q]:
        left = _run(ar, e, ar.plus[e], members, k - 1)
        right = _run(ar, e, ar.minus[e], members, k - 1)
        seq = left[::-1]
        seq.append(e)
        seq.extend(right)
        pos = len(left)
        lo = max(0, pos - k + 1)
        hi = min(pos, len(seq) - k)
        if lo > hi:
            continue
        counts: dict = {}
        dup = 0
        for x in seq[lo:lo + k]:
            ch = chord[x]
            counts[ch] = counts.get(ch, 0) + 1
            if counts[ch] == 2:
                dup += 1
        s = lo
        while True:
            if dup == 0:
                ends = (chord[seq[s]], chord[seq[s + k - 1]])
                if all(m in ends for m in mixed):
                    if k == 1:
                        return Witness(seq[s], None, seq[s], None, 1)
                    return Witness(seq[s], seq[s + 1], seq[s + k - 1], seq[s + k - 2], k)
            if s == hi:
                break
            out_ch = chord[seq[s]]
            counts[out_ch] -= 1
            if counts[out_ch] == 1:
                dup -= 1
            in_ch = chord[seq[s + k]]
            counts[in_ch] = counts.get(in_ch, 0) + 1
            if counts[in_ch] == 2:
                dup += 1
            s += 1
    return None


def build_degenerate_diagram(arena: Arena, kind: str, markers: Sequence, centre,
                             mp: Iterable, mixed: Iterable = ()) -> tuple[CSC, Witness] | None:
    """Pick a clique or star diagram in which ``mp`` is consecutive.

    Tries every word of the generic form and keeps the first one with a
    factor over ``mp`` having every mixed chord at an end.
    """
    if len(markers) > 4:
        raise ValueError("degenerate node has more than four markers")
    mp = list(mp)
    mixed = list(mixed)
    for word in degenerate_words(kind, markers, centre):
        hit = find_factor(word, mp, mixed)
        if hit is None:
            continue
        s, k = hit
        c = csc_from_word(word, arena)
        n = len(word)
        eps = [arena.ends[word[(s + i) % n][0]][word[(s + i) % n][1] - 1] for i in range(k)]
        if k == 1:
            return c, Witness(eps[0], None, eps[0], None, 1)
        return c, Witness(eps[0], eps[1], eps[-1], eps[-2], k)
    return None


def _splice(ar: Arena, arcs: list[tuple[int, int, int, int]]) -> None:
    """Link arcs into one cycle in the given order.

    Each arc is ``(first, first_gone, last, last_gone)`` where ``*_gone`` is
    the removed endpoint that the end currently points at.
    """
    links = ar.links
    slots = [(ar.slot_to(f, fg), ar.slot_to(l, lg)) for f, fg, l, lg in arcs]
    k = len(arcs)
    for i in range(k):
        a_last = arcs[i][2]
        b_first = arcs[(i + 1) % k][0]
        links[slots[i][1]][a_last] = b_first
        links[slots[(i + 1) % k][0]][b_first] = a_last


def _orient(ar: Arena, w: Witness, q) -> tuple[int, int, int, int | None]:
    if w.length < 2:
        raise ValueError("witness must hold at least two endpoints")
    if ar.chord[w.start] == q:
        return w.start, w.start_in, w.end, w.end_in
    if ar.chord[w.end] == q:
        return w.end, w.end_in, w.start, w.start_in
    raise ValueError(f"chord {q!r} is not a bookend of the witness")


def circle_join(cu: CSC, q, wu: Witness, cv: CSC, r, wv: Witness) -> tuple[CSC, Witness]:
    """Join two diagrams at chords ``q`` and ``r`` keeping the union of witnessed sets consecutive.

    Name the first diagram ``q_in X q_out Y`` where ``q_in`` is the endpoint
    of ``q`` in the witness and the witness continues into ``X``; likewise
    ``r_in X2 r_out Y2``. The result is ``X Y2^r Y X2^r``, in which the tail
    of the second witness runs straight into the head of the first.
    Constant work.
    """
    ar = cu.arena
    if cv.arena is not ar:
        raise ValueError("diagrams must share an arena")
    links, mate = ar.links, ar.mate
    q_in, n_q, far_u, far_u_in = _orient(ar, wu, q)
    r_in, n_r, far_v, far_v_in = _orient(ar, wv, r)
    q_out, r_out = mate[q_in], mate[r_in]
    s = ar.slot_to(q_in, n_q)
    t = ar.slot_to(r_in, n_r)
    e_q, f_q, g_q = links[s][q_out], links[1 - s][q_out], links[1 - s][q_in]
    e_r, f_r, g_r = links[t][r_out], links[1 - t][r_out], links[1 - t][r_in]
    arcs = [(n_q, q_in, e_q, q_out)]
    if f_r != r_in:
        arcs.append((g_r, r_in, f_r, r_out))
    if f_q != q_in:
        arcs.append((f_q, q_out, g_q, q_in))
    arcs.append((e_r, r_out, n_r, r_in))
    _splice(ar, arcs)
    del ar.ends[q], ar.ends[r]
    start_in = n_q if wv.length == 2 else far_v_in
    end_in = n_r if wu.length == 2 else far_u_in
    w = Witness(far_v, start_in, far_u, end_in, wu.length + wv.length - 2)
    anchor_slot = 1 - ar.slot_to(n_q, n_r)
    return CSC(ar, n_q, anchor_slot, cu.size + cv.size - 2), w


def join_plain(arena: Arena, q, r) -> int:
    """Join at ``q`` and ``r`` without any witness; returns a surviving endpoint.

    Produces ``C(q1,q2) C'(r1,r2) C(q2,q1) C'(r2,r1)`` in the orientation
    where the plus link of ``q1`` points forward.
    """
    ar = arena
    plus, minus = ar.plus, ar.minus
    q1, q2 = ar.ends[q]
    r1, r2 = ar.ends[r]
    arcs = []
    if plus[q1] != q2:
        arcs.append((plus[q1], q1, plus[q2], q2))
    if plus[r1] != r2:
        arcs.append((plus[r1], r1, plus[r2], r2))
    if minus[q2] != q1:
        arcs.append((minus[q2], q2, minus[q1], q1))
    if minus[r2] != r1:
        arcs.append((minus[r2], r2, minus[r1], r1))
    _splice(ar, arcs)
    del ar.ends[q], ar.ends[r]
    return arcs[0][0]


def insert_chord(c: CSC, w: Witness, label) -> CSC:
    """Add a chord crossing exactly the chords with an endpoint in the factor ``w``.

    The new endpoints go just outside the two ends of the factor and their
    plus links point into it.
    """
    ar = c.arena
    links = ar.links
    c1, c2 = ar.new_chord(label)
    s, e = w.start, w.end
    if w.length == 1:
        so, eo = PLUS, MINUS
    else:
        so = 1 - ar.slot_to(s, w.start_in)
        eo = 1 - ar.slot_to(e, w.end_in)
    a, a2 = links[so][s], links[eo][e]
    ta = ar.slot_to(a, s)
    if a2 == a and w.length == 1:
        ta2 = 1 - ta
    else:
        ta2 = ar.slot_to(a2, e)
    links[ta][a] = c1
    links[so][s] = c1
    ar.plus[c1], ar.minus[c1] = s, a
    links[ta2][a2] = c2
    links[eo][e] = c2
    ar.plus[c2], ar.minus[c2] = e, a2
    c.size += 1
    return c
