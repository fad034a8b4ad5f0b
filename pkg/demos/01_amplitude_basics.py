"""Evaluating graph amplitudes.

Run with ``python demos/01_amplitude_basics.py``.
"""

import numpy as np

from graph_amplitude import amplitude, build_spinor_system
from graph_amplitude import graphs as gr
from graph_amplitude.oracle import amplitude_tensor_oracle

rng = np.random.default_rng(0)

### A graph is a vertex count plus a set of edges; vertices are 0-indexed.
square_with_tail = gr.SimpleGraph(5, ((0, 1), (1, 2), (2, 3), (3, 0), (3, 4)))
print(square_with_tail)

### A configuration puts one point of R^3 on every vertex.
x = rng.standard_normal((5, 3))

### The dispatcher picks an evaluator from the graph's shape.
result = amplitude(square_with_tail, x)
print(f"auto ({result.method}):", result.value)

### Every evaluator computes the same number.
for method in ("bruteforce", "frontier", "oracle"):
    print(f"{method:>10}:", amplitude(square_with_tail, x, method).value)

### The spinor system holds one unit spinor per directed edge.
sys = build_spinor_system(square_with_tail, x)
print("psi[(0, 1)] =", sys.psi[(0, 1)])
print("normalizers:", sys.norm_factors)

### A single edge always gives exactly 1.
print("single edge:", amplitude(gr.path_graph(2), rng.standard_normal((2, 3))).value)

### Collinear points on the complete graph give prod_{k<n} (k!)^2.
for n in (3, 4, 5):
    line = np.zeros((n, 3))
    line[:, 2] = np.arange(n)
    print(f"K_{n} on a line:", amplitude(gr.complete_graph(n), line).value.real)

### Symmetries: rotations leave the value alone, a point reflection conjugates it.
theta = 0.7
rot = np.array([[np.cos(theta), -np.sin(theta), 0], [np.sin(theta), np.cos(theta), 0], [0, 0, 1]])
print("rotated:  ", amplitude(square_with_tail, x @ rot.T).value)
print("reflected:", amplitude(square_with_tail, -x).value)

### The literal tensor construction agrees on small graphs.
tri = gr.complete_graph(3)
y = rng.standard_normal((3, 3))
print("tensor oracle K3:", amplitude_tensor_oracle(tri, y).value, "vs", amplitude(tri, y).value)
