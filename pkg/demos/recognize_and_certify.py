"""
Recognizing a circle graph and checking its certificate
=======================================================

Build the interlacement graph of a nine-chord diagram, hand it to the
recognizer, then verify the returned diagram independently.
"""

from circlegraph.chords import format_word, parse_word, same_diagram
from circlegraph.generate import circle_graph_from_word
from circlegraph.oracle import wheel
from circlegraph.recognizer import certify, recognize

text = "c.1 d.2 b.1 c.2 a.2 g.2 h.2 f.1 x.1 g.1 e.2 f.2 b.2 a.1 x.2 d.1 e.1 h.1"
names = "abcdefghx"
word = [(names.index(c), k) for c, k in parse_word(text)]
g = circle_graph_from_word(word)
print(f"graph: n={g.n} m={g.m}")

out = recognize(g)
print("circle graph:", bool(out))
print("diagram:", format_word(out.diagram))

# certify only looks at crossings, not at how the diagram was found
print("certificate holds:", certify(g, out.diagram))

# the graph is prime, so the diagram is the input one up to rotation and reflection
print("same diagram as the input:", same_diagram(out.diagram, word))

###############################################################################
# A graph that is not a circle graph
# ----------------------------------
# The wheel on five spokes has no chord diagram. The recognizer stops at the
# first vertex whose insertion cannot be realised.

bad = recognize(wheel(5))
print("wheel accepted:", bool(bad))
print("failed at vertex", bad.failed_vertex, "after prefix", bad.prefix)
print("reason:", bad.failed_node_info)
