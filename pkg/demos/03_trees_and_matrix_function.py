"""Tree amplitudes as a permanent-like function of a Gram matrix.

Run with ``python demos/03_trees_and_matrix_function.py``.
"""

import numpy as np

from graph_amplitude import Partition, amplitude, build_spinor_system, check_conjecture_d, f_sim, gram_matrix, permanent, random_psd
from graph_amplitude import graphs as gr

rng = np.random.default_rng(2)

### Orient a tree by depth parity: even-depth vertices only send, odd-depth ones only receive.
T = gr.random_tree(7, rng)
orient = gr.level_orientation(T, root=0)
print(T)
print("oriented edges:", sorted(orient.values()))

### Gram matrix of the oriented edge spinors, and the edge partitions by source and target.
x = rng.standard_normal((7, 3))
sys = build_spinor_system(T, x, orient)
edges = [orient[e] for e in T.edges]
A = gram_matrix([sys.psi[e] for e in edges])
by_source = Partition.from_labels([s for s, _ in edges])
by_target = Partition.from_labels([t for _, t in edges])
print("by source:", by_source, " by target:", by_target)

### The amplitude is the conjugate of f_sim on that Gram matrix.
print("conj f_sim:", np.conj(f_sim(A, by_source, by_target)))
print("amplitude: ", amplitude(T, x, "bruteforce").value)

### With one partition discrete and the other a single block, f_sim is the permanent.
B = random_psd(5, rng)
print("f_sim:", f_sim(B, Partition.discrete(5), Partition.indiscrete(5)), " perm:", permanent(B))

### The inequality Re f_sim >= |P1 & P2| prod A_ii on a random case.
v = check_conjecture_d(B, Partition.parse("0,1|2,3,4"), Partition.parse("0,2|1|3,4"))
print(v)
