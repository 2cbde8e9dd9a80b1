"""Circle graph recognition with split trees and chord diagram certificates."""

from .chords import format_word, interlacement, parse_word
from .graph import Graph, LbfsOrdering, connected_components, induced_subgraph, is_lbfs, lbfs
from .recognizer import Circle, NotCircle, Recognizer, certify, recognize

__all__ = [
    "Circle",
    "Graph",
    "LbfsOrdering",
    "NotCircle",
    "Recognizer",
    "certify",
    "connected_components",
    "format_word",
    "induced_subgraph",
    "interlacement",
    "is_lbfs",
    "lbfs",
    "parse_word",
    "recognize",
]
