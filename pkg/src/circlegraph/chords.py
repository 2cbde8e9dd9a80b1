"""Chord diagrams as circular double-occurrence words.

A word is a list of ``(chord, index)`` tokens where ``index`` is 1 or 2 and
every chord appears once with each index. Chord labels may be any hashable
value. Rotation and reversal give equivalent diagrams.
"""

from __future__ import annotations

from itertools import permutations
from typing import Hashable, Iterable, Sequence

from .graph import Graph

Token = tuple[Hashable, int]
Word = list[Token]


def parse_word(text: str) -> Word:
    """Parse ``"a.1 b.1 a.2 b.2"`` into tokens (chord names stay strings)."""
    word = []
    for tok in text.split():
        name, dot, idx = tok.rpartition(".")
        if not dot or idx not in ("1", "2") or not name:
            raise ValueError(f"bad endpoint token {tok!r}")
        word.append((name, int(idx)))
    check_word(word)
    return word


def format_word(word: Sequence[Token]) -> str:
    return " ".join(f"{c}.{i}" for c, i in word)


def check_word(word: Sequence[Token]) -> None:
    """Raise ``ValueError`` unless each chord has exactly one ``.1`` and one ``.2``."""
    seen: dict[Hashable, set[int]] = {}
    for c, i in word:
        if i not in (1, 2):
            raise ValueError(f"endpoint index must be 1 or 2, got {i!r}")
        s = seen.setdefault(c, set())
        if i in s:
            raise ValueError(f"chord {c!r} has endpoint {i} twice")
        s.add(i)
    for c, s in seen.items():
        if len(s) != 2:
            raise ValueError(f"chord {c!r} occurs only once")


def chords_of(word: Sequence[Token]) -> list:
    """Chords in order of first occurrence."""
    out, seen = [], set()
    for c, _ in word:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def relabel_indices(word: Sequence[Token]) -> Word:
    """Renumber endpoints so that each chord's first occurrence is ``.1``."""
    seen = set()
    out = []
    for c, _ in word:
        if c in seen:
            out.append((c, 2))
        else:
            seen.add(c)
            out.append((c, 1))
    return out


def crossing_pairs(word: Sequence[Token]) -> list[tuple]:
    """All pairs of crossing chords, in O(n + m).

    Open chords are kept in a linked list ordered by opening position. When
    chord c closes, exactly the chords opened after c and still open cross it.
    """
    nxt: dict = {}
    prv: dict = {}
    sentinel = object()
    nxt[sentinel] = sentinel
    prv[sentinel] = sentinel
    pairs = []
    for c, _ in word:
        if c in nxt:
            d = nxt[c]
            while d is not sentinel:
                pairs.append((c, d))
                d = nxt[d]
            p, q = prv[c], nxt[c]
            nxt[p] = q
            prv[q] = p
            del nxt[c], prv[c]
        else:
            last = prv[sentinel]
            nxt[last] = c
            prv[c] = last
            nxt[c] = sentinel
            prv[sentinel] = c
    return pairs


def interlacement(word: Sequence[Token]) -> dict:
    """Adjacency dict of the graph encoded by ``word`` (chords cross iff adjacent)."""
    adj = {c: set() for c in chords_of(word)}
    for a, b in crossing_pairs(word):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def interlacement_graph(word: Sequence[Token], n: int | None = None) -> Graph:
    """Interlacement graph for a word whose chords are the ints ``0..n-1``."""
    if n is None:
        n = len(word) // 2
    g = Graph(n)
    for a, b in crossing_pairs(word):
        g.add_edge(a, b)
    return g


def induced_word(word: Sequence[Token], keep: Iterable) -> Word:
    keep = set(keep)
    return [t for t in word if t[0] in keep]


def reverse_word(word: Sequence[Token]) -> Word:
    return list(reversed(word))


def rotate_to(word: Sequence[Token], token: Token) -> Word:
    i = list(word).index(token)
    return list(word[i:]) + list(word[:i])


def arc(word: Sequence[Token], a: Token, b: Token) -> Word:
    """The factor strictly between tokens ``a`` and ``b`` going forward."""
    w = rotate_to(word, a)
    return w[1:w.index(b)]


def circle_join_word(c1: Sequence[Token], q, c2: Sequence[Token], r,
                     hat: bool = False, reflect: bool = False) -> Word:
    """Join two diagrams by replacing chord ``q`` of ``c1`` and ``r`` of ``c2``.

    The plain variant yields ``C(q1,q2) C'(r1,r2) C(q2,q1) C'(r2,r1)``.
    ``reflect`` uses the reversal of ``c2``; ``hat`` swaps the roles of the
    two diagrams. Every variant encodes the graph join at ``q`` and ``r``.
    """
    if (set(chords_of(c1)) - {q}) & (set(chords_of(c2)) - {r}):
        raise ValueError("diagrams share chord labels")
    if len(c1) < 4 or len(c2) < 4:
        raise ValueError("both diagrams need at least two chords")
    if reflect:
        c2 = reverse_word(c2)
    if hat:
        c1, q, c2, r = c2, r, c1, q
    q1, q2, r1, r2 = (q, 1), (q, 2), (r, 1), (r, 2)
    return arc(c1, q1, q2) + arc(c2, r1, r2) + arc(c1, q2, q1) + arc(c2, r2, r1)


def clique_word(chords: Sequence) -> Word:
    """The ``AA`` form: every pair of chords crosses."""
    return [(c, 1) for c in chords] + [(c, 2) for c in chords]


def star_word(centre, leaves: Sequence) -> Word:
    """The ``c A c A^r`` form: the centre crosses every leaf, leaves are disjoint."""
    return ([(centre, 1)] + [(c, 1) for c in leaves]
            + [(centre, 2)] + [(c, 2) for c in reversed(leaves)])


def find_factor(word: Sequence[Token], chords: Iterable, bookends: Iterable = ()) -> tuple[int, int] | None:
    """Locate a factor holding one endpoint of each chord in ``chords`` and nothing else.

    Every chord in ``bookends`` must sit at one end of the factor. Returns
    ``(start, length)`` as positions in ``word`` (the factor may wrap), or
    ``None``. Quadratic scan; meant for tests and tiny diagrams.
    """
    target = set(chords)
    ends = set(bookends)
    k = len(target)
    n = len(word)
    if k == 0 or k > n // 2:
        return None
    for s in range(n):
        window = [word[(s + i) % n][0] for i in range(k)]
        if len(set(window)) == k and set(window) == target and ends <= {window[0], window[-1]}:
            return s, k
    return None


def is_consecutive(word: Sequence[Token], chords: Iterable, bookends: Iterable = ()) -> bool:
    return find_factor(word, chords, bookends) is not None


def canonical_form(word: Sequence[Token]) -> tuple:
    """Chord-name sequence minimised over rotations and reflections.

    Two simple diagrams on the same chord names are equal up to rotation and
    reflection iff their canonical forms coincide. Chord labels must be
    mutually comparable.
    """
    seq = [c for c, _ in word]
    best = None
    for s in (seq, seq[::-1]):
        for i in range(len(s)):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best


def same_diagram(w1: Sequence[Token], w2: Sequence[Token]) -> bool:
    return len(w1) == len(w2) and canonical_form(w1) == canonical_form(w2)


def degenerate_words(kind: str, chords: Sequence, centre=None):
    """All clique (``AA``) or star (``cAcA^r``) words over ``chords`` (small inputs)."""
    if kind == "clique":
        for perm in permutations(chords):
            yield clique_word(perm)
    elif kind == "star":
        leaves = [c for c in chords if c != centre]
        for perm in permutations(leaves):
            yield star_word(centre, perm)
    else:
        raise ValueError(f"unknown degenerate kind {kind!r}")
