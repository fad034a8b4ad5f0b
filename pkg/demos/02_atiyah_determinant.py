"""The normalized Atiyah determinant and its link to the complete graph.

Run with ``python demos/02_atiyah_determinant.py``.
"""

import numpy as np

from graph_amplitude import a_constant, amplitude, atiyah_determinant, atiyah_polynomials
from graph_amplitude import graphs as gr

rng = np.random.default_rng(1)

### Each point gets a polynomial of degree n-1; columns of coefficients form a matrix.
x = rng.standard_normal((4, 3))
for i, p in enumerate(atiyah_polynomials(x)):
    print(f"p_{i} coefficients:", np.round(p, 4))

### After normalization the determinant is D; |D| >= 1 is known for n <= 4.
res = atiyah_determinant(x)
print("D =", res.value, " |D| =", abs(res.value))

### Collinear configurations give D = 1.
print("collinear D:", atiyah_determinant(np.outer(rng.uniform(size=5), [1.0, 2.0, -1.0])).value)

### The complete-graph amplitude equals a_n * D.
for n in (3, 4):
    y = rng.standard_normal((n, 3))
    lhs = amplitude(gr.complete_graph(n), y, "bruteforce").value
    rhs = a_constant(n) * atiyah_determinant(y).value
    print(f"n={n}: amplitude {lhs:.10f}  a_n*D {rhs:.10f}")

### Smallest |D| seen over a few thousand random 4-point configurations.
smallest = min(abs(atiyah_determinant(rng.standard_normal((4, 3))).value) for _ in range(2000))
print("min |D| over 2000 samples:", smallest)
