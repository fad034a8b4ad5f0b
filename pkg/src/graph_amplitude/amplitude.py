"""Evaluators for the graph amplitude of a point configuration.

For an orientation of the graph, the amplitude expands as a sum over one
permutation ``pi_v`` of the neighbourhood ``N(v)`` per vertex::

    A_G(x) = sum_pi prod_{(i,j) oriented} omega(psi[i, pi_i(j)], psi[j, pi_j(i)])
                                          / omega(psi[i, j], psi[j, i])

where ``psi[i, j]`` lifts the direction from ``x_i`` to ``x_j``.  Every
evaluator here computes this same number by a different route.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

import numpy as np

from . import graphs as gr
from .errors import BudgetExceeded, CoincidentPoints
from .geometry import SEPARATION_EPS, as_configuration, hopf_lift_many, separation_threshold

BRUTEFORCE_BUDGET = 10**7
FRONTIER_MAX_ENTRIES = 2**24
AUTO_BRUTEFORCE_LIMIT = 10**4
NORM_FLOOR = 1e-10

_BLOCK = 2**20

METHODS = ("auto", "bruteforce", "frontier", "tree", "complete", "oracle")


@dataclass(frozen=True)
class AmplitudeResult:
    value: complex
    method: str
    term_count: int | None = None

    def to_json(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "method": self.method,
            "term_count": self.term_count,
        }


@dataclass(frozen=True)
class EdgeSpinorSystem:
    """Spinors for every directed edge pair plus the orientation's normalizers."""

    graph: gr.SimpleGraph
    orientation: dict
    psi: dict
    norm_factors: dict

    def with_phase(self, pair, phase: complex) -> EdgeSpinorSystem:
        """Copy with ``psi[pair]`` multiplied by ``phase`` (normalizers recomputed)."""
        psi = dict(self.psi)
        psi[pair] = psi[pair] * phase
        return replace(self, psi=psi, norm_factors=_norm_factors(self.orientation, psi))

    def edge_matrix(self, oriented) -> np.ndarray:
        """``M[a, b] = omega(psi[i, N(i)[a]], psi[j, N(j)[b]]) / omega(psi[i,j], psi[j,i])``."""
        i, j = oriented
        G = self.graph
        left = np.array([self.psi[(i, k)] for k in gr.neighbors(G, i)])
        right = np.array([self.psi[(j, k)] for k in gr.neighbors(G, j)])
        m = np.outer(left[:, 0], right[:, 1]) - np.outer(left[:, 1], right[:, 0])
        return m / self.norm_factors[oriented]


def _norm_factors(orientation, psi) -> dict:
    out = {}
    for i, j in orientation.values():
        a, b = psi[(i, j)], psi[(j, i)]
        w = complex(a[0] * b[1] - b[0] * a[1])
        if abs(w) < NORM_FLOOR:
            raise CoincidentPoints(f"degenerate normalizer on edge {(i, j)}", edge=(i, j))
        out[(i, j)] = w
    return out


def build_spinor_system(G: gr.SimpleGraph, x, orientation=None,
                        eps: float = SEPARATION_EPS) -> EdgeSpinorSystem:
    x = as_configuration(x)
    if x.shape[0] != G.n:
        raise ValueError(f"configuration has {x.shape[0]} points, graph has {G.n} vertices")
    if orientation is None:
        orientation = gr.default_orientation(G)
    if set(orientation) != set(G.edges):
        raise ValueError("orientation must cover exactly the edge set")
    pairs = G.directed_pairs()
    if not pairs:
        return EdgeSpinorSystem(G, dict(orientation), {}, {})
    src = np.array([p[0] for p in pairs])
    dst = np.array([p[1] for p in pairs])
    diff = x[dst] - x[src]
    norms = np.linalg.norm(diff, axis=1)
    for k, (i, j) in enumerate(pairs):
        if not norms[k] > separation_threshold(x[i], x[j], eps):
            raise CoincidentPoints(f"edge {(min(i, j), max(i, j))} has coincident endpoints",
                                   edge=(min(i, j), max(i, j)))
    lifts = hopf_lift_many(diff / norms[:, None])
    psi = {p: lifts[k] for k, p in enumerate(pairs)}
    return EdgeSpinorSystem(G, dict(orientation), psi, _norm_factors(orientation, psi))


def _vertex_permutations(G: gr.SimpleGraph, v: int) -> np.ndarray:
    """All bijections of ``N(v)`` as an array of neighbour-index tuples."""
    d = G.degree(v)
    return np.array(list(itertools.permutations(range(d))), dtype=np.int64).reshape(math.factorial(d), d)


def amplitude_bruteforce(sys: EdgeSpinorSystem, budget: int = BRUTEFORCE_BUDGET) -> AmplitudeResult:
    """Sum every term of the permutation expansion explicitly.

    Terms are materialized block by block: each block fixes the permutations
    at the leading vertices and broadcasts over the rest.
    """
    G = sys.graph
    count = gr.permutation_count(G)
    if count > budget:
        raise BudgetExceeded(f"{count} terms exceed brute-force budget {budget}")
    if G.m == 0:
        return AmplitudeResult(1 + 0j, "bruteforce", 1)
    nbr_pos = [{u: k for k, u in enumerate(gr.neighbors(G, v))} for v in range(G.n)]
    perms = [_vertex_permutations(G, v) for v in range(G.n)]
    sizes = [len(p) for p in perms]

    # per-edge factor tables over (perm index at i, perm index at j)
    factors = []
    for e in G.edges:
        i, j = sys.orientation[e]
        mat = sys.edge_matrix((i, j))
        a = perms[i][:, nbr_pos[i][j]]
        b = perms[j][:, nbr_pos[j][i]]
        factors.append((i, j, mat[a[:, None], b[None, :]]))

    # split vertices into an outer loop and a broadcast tail
    split = G.n
    tail = 1
    while split > 0 and tail * sizes[split - 1] <= _BLOCK:
        split -= 1
        tail *= sizes[split]
    total = 0j
    for head in itertools.product(*(range(s) for s in sizes[:split])):
        block = np.ones(sizes[split:], dtype=complex)
        for i, j, table in factors:
            block = block * _edge_view(table, i, j, head, split, G.n)
        total += block.sum()
    return AmplitudeResult(complex(total), "bruteforce", count)


def _edge_view(table, i, j, head, split, n):
    """Broadcastable view of an edge table over the tail vertex axes."""
    t = table[head[i] if i < split else slice(None), head[j] if j < split else slice(None)]
    tail = [v for v in (i, j) if v >= split]
    if len(tail) == 2 and i > j:
        t = t.T
    shape = [1] * (n - split)
    for v, size in zip(sorted(tail), np.shape(t)):
        shape[v - split] = size
    return np.reshape(t, shape)


def greedy_elimination_order(G: gr.SimpleGraph) -> list[int]:
    """Vertex order that greedily minimizes the pending-variable table size."""
    done = set()
    order = []
    log_deg = [math.log(max(d, 1)) for d in G.degrees()]
    while len(order) < G.n:
        best, best_cost = None, None
        for v in range(G.n):
            if v in done:
                continue
            trial = done | {v}
            cost = sum(log_deg[u] for u in trial for w in gr.neighbors(G, u) if w not in trial)
            if best_cost is None or cost < best_cost - 1e-12:
                best, best_cost = v, cost
        done.add(best)
        order.append(best)
    return order


def amplitude_frontier(sys: EdgeSpinorSystem, elimination_order=None,
                       max_entries: int = FRONTIER_MAX_ENTRIES) -> AmplitudeResult:
    """Vertex-elimination evaluation of the permutation sum.

    The table carries one axis per pending choice ``pi_u(w)`` for processed
    ``u`` and unprocessed neighbour ``w``.  Eliminating ``v`` first folds the
    edge factor of every processed neighbour into that axis, then sums over
    the permutations of ``N(v)``, opening axes toward unprocessed neighbours.
    """
    G = sys.graph
    order = list(elimination_order) if elimination_order is not None else greedy_elimination_order(G)
    if sorted(order) != list(range(G.n)):
        raise ValueError("elimination order must be a permutation of the vertices")
    position = {v: k for k, v in enumerate(order)}
    nbrs = [gr.neighbors(G, v) for v in range(G.n)]
    nbr_pos = [{u: k for k, u in enumerate(nb)} for nb in nbrs]

    table = np.ones((), dtype=complex)
    axes: list[tuple[int, int]] = []
    for v in order:
        d = len(nbrs[v])
        done = [u for u in nbrs[v] if position[u] < position[v]]
        todo = [w for w in nbrs[v] if position[w] > position[v]]
        # fold edge factors: axis pi_u(v) over N(u) becomes pi_v(u) over N(v)
        for u in done:
            k = axes.index((u, v))
            e = (min(u, v), max(u, v))
            mat = sys.edge_matrix(sys.orientation[e])
            if sys.orientation[e][0] != u:
                mat = mat.T
            table = np.moveaxis(np.tensordot(table, mat, axes=([k], [0])), -1, k)
            axes[k] = ("in", v, u)
        # move incoming axes to the back in neighbour order
        keep = [k for k, a in enumerate(axes) if not (a[0] == "in" and a[1] == v)]
        incoming = [axes.index(("in", v, u)) for u in done]
        table = np.transpose(table, keep + incoming)
        rest_axes = [axes[k] for k in keep]
        new_shape = table.shape[: len(keep)] + (d,) * len(todo)
        size = math.prod(new_shape)
        if size > max_entries:
            raise BudgetExceeded(f"frontier table of {size} entries exceeds cap {max_entries}")
        new = np.zeros(new_shape, dtype=complex)
        done_idx = [nbr_pos[v][u] for u in done]
        todo_idx = [nbr_pos[v][w] for w in todo]
        for pi in itertools.permutations(range(d)):
            sub = table[(Ellipsis, *(pi[k] for k in done_idx))]
            new[(Ellipsis, *(pi[k] for k in todo_idx))] += sub
        table = new
        axes = rest_axes + [(v, w) for w in todo]
    return AmplitudeResult(complex(table), "frontier", None)


def amplitude_tree(T: gr.SimpleGraph, x, root: int = 0) -> AmplitudeResult:
    """Tree amplitude as the conjugate of ``f_sim`` on the edge-spinor Gram matrix.

    With the level orientation every edge runs from an even-depth vertex to
    an odd-depth one; edges are grouped once by source and once by target.
    """
    from .matrix import Partition, f_sim, gram_matrix

    orient = gr.level_orientation(T, root)
    sys = build_spinor_system(T, x, orient)
    oriented = [orient[e] for e in T.edges]
    A = gram_matrix([sys.psi[e] for e in oriented])
    by_source = Partition.from_labels([i for i, _ in oriented])
    by_target = Partition.from_labels([j for _, j in oriented])
    value = np.conj(f_sim(A, by_source, by_target))
    return AmplitudeResult(complex(value), "tree", gr.permutation_count(T))


def amplitude_complete(n: int, x) -> AmplitudeResult:
    """``a_n * D(x)`` for the complete graph on ``n`` vertices."""
    from .atiyah import a_constant, atiyah_determinant

    x = as_configuration(x)
    if n < 2:
        raise ValueError("complete-graph path needs n >= 2")
    if x.shape[0] != n:
        raise ValueError(f"configuration has {x.shape[0]} points, expected {n}")
    det = atiyah_determinant(x)
    return AmplitudeResult(complex(a_constant(n) * det.value), "complete", None)


def choose_method(G: gr.SimpleGraph) -> str:
    if G.n >= 2 and gr.is_complete(G):
        return "complete"
    if gr.is_tree(G):
        return "tree"
    if gr.permutation_count(G) <= AUTO_BRUTEFORCE_LIMIT:
        return "bruteforce"
    return "frontier"


def amplitude(G: gr.SimpleGraph, x, method: str = "auto", orientation=None) -> AmplitudeResult:
    """Evaluate the amplitude of ``x`` on ``G`` with the named (or automatic) method."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "auto":
        method = choose_method(G)
    if method == "complete":
        if not gr.is_complete(G):
            raise ValueError("complete method requires a complete graph")
        return amplitude_complete(G.n, x)
    if method == "tree":
        return amplitude_tree(G, x)
    if method == "oracle":
        from .oracle import amplitude_tensor_oracle

        return amplitude_tensor_oracle(G, x, orientation)
    sys = build_spinor_system(G, x, orientation)
    if method == "bruteforce":
        return amplitude_bruteforce(sys)
    return amplitude_frontier(sys)
