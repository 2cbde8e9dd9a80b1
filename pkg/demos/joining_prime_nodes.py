"""
Watching two prime nodes merge
==============================

The eight-vertex graph below splits into two prime pieces of five markers
each. Adding a vertex adjacent to a, b, e, f and g crosses the split, so
the two pieces (and their diagrams) must be joined into one.
"""

from circlegraph.chords import format_word, parse_word
from circlegraph.generate import circle_graph_from_word
from circlegraph.graph import lbfs
from circlegraph.recognizer import Recognizer
from circlegraph.splittree import dump

names = "abcdefghx"
ids = {c: i for i, c in enumerate(names)}
word = parse_word("a.2 h.1 e.1 b.2 a.1 d.1 f.2 e.2 g.1 f.1 h.2 g.2 c.1 d.2 b.1 c.2")
g = circle_graph_from_word([(ids[c], k) for c, k in word])

rec = Recognizer()
placed = set()
for v in lbfs(g, 0).order:
    rec.insert_vertex(v, sorted(w for w in g.adj[v] if w in placed))
    placed.add(v)

print("split tree before:")
for line in dump(rec.tree, names):
    print("  ", line)

###############################################################################
# Insert x
# --------
# Both tree-edge extremities are mixed, so this is the contraction case: each
# prime node finds its marked chords as one factor of its diagram, the two
# diagrams are joined keeping that factor contiguous, and a chord for x is
# laid across it.

ok = rec.insert_vertex(8, [ids[c] for c in "abefg"])
print("accepted:", ok, "case:", rec.last_case)

print("split tree after:")
for line in dump(rec.tree, names):
    print("  ", line)

diagram = rec.extract_diagram()
print("diagram:", format_word([(names[c], k) for c, k in diagram]))
