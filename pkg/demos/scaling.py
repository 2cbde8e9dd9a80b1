"""
How recognition time grows
==========================

Time the recognizer on random circle graphs made of short chords, doubling
n each step. Near-linear behaviour shows up as a ratio close to 2.
"""

import time

import numpy as np

from circlegraph.generate import random_circle_graph
from circlegraph.recognizer import recognize

sizes = [2500, 5000, 10000, 20000]
seconds = []
for n in sizes:
    g, _ = random_circle_graph(n, seed=0, sparse_degree=8)
    t0 = time.perf_counter()
    assert recognize(g)
    seconds.append(time.perf_counter() - t0)
    print(f"n={n:6d} m={g.m:7d} {seconds[-1]:.2f}s")

ratios = np.array(seconds[1:]) / np.array(seconds[:-1])
print("per-doubling ratios:", np.round(ratios, 2))

# a log-log fit gives the empirical exponent
slope = np.polyfit(np.log(sizes), np.log(seconds), 1)[0]
print(f"fitted exponent: {slope:.2f}")
