"""Simple graphs, orientations, automorphisms and isomorphism-class enumeration.

Vertices are ``0..n-1``.  Edges are stored as sorted ``(i, j)`` pairs with
``i < j`` alongside an adjacency bitmask per vertex.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotATree, TooLarge

Edge = tuple[int, int]
# maps each undirected edge (i < j) to the chosen directed pair
Orientation = dict[Edge, Edge]

MAX_CANONICAL_N = 7
MAX_AUTOMORPHISM_N = 8


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = set()
        for e in self.edges:
            i, j = (int(v) for v in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            key = (min(i, j), max(i, j))
            if key in normalized:
                raise ValueError(f"duplicate edge {key}")
            normalized.add(key)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        object.__setattr__(self, "adjacency", tuple(adj))

    @classmethod
    def from_edges(cls, n: int, edges) -> SimpleGraph:
        return cls(n, tuple(tuple(e) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adjacency]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def directed_pairs(self) -> list[Edge]:
        """Both directions of every edge, sorted."""
        return sorted([(i, j) for i, j in self.edges] + [(j, i) for i, j in self.edges])

    def relabel(self, sigma) -> SimpleGraph:
        """The graph ``G.sigma`` with edges ``{sigma(i), sigma(j)}``."""
        return SimpleGraph(self.n, tuple((sigma[i], sigma[j]) for i, j in self.edges))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> SimpleGraph:
        return cls.from_edges(int(data["n"]), data["edges"])

    def __str__(self):
        edges = ", ".join(f"{i + 1}-{j + 1}" for i, j in self.edges)
        return f"G(n={self.n}; {edges})"


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> SimpleGraph:
    return SimpleGraph(leaves + 1, tuple((0, k) for k in range(1, leaves + 1)))


def empty_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, ())


def neighbors(G: SimpleGraph, v: int) -> list[int]:
    """Sorted neighbours of ``v``."""
    a = G.adjacency[v]
    return [u for u in range(G.n) if a >> u & 1]


def is_connected(G: SimpleGraph) -> bool:
    if G.n == 0:
        return True
    seen = 1
    frontier = 1
    full = (1 << G.n) - 1
    while frontier:
        nxt = 0
        for v in range(G.n):
            if frontier >> v & 1:
                nxt |= G.adjacency[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == full


def is_complete(G: SimpleGraph) -> bool:
    return G.m == G.n * (G.n - 1) // 2


def is_tree(G: SimpleGraph) -> bool:
    return G.n >= 1 and G.m == G.n - 1 and is_connected(G)


def is_star(G: SimpleGraph) -> bool:
    if not is_tree(G):
        return False
    return G.n == 1 or max(G.degrees()) == G.n - 1


def components(G: SimpleGraph) -> list[list[int]]:
    remaining = set(range(G.n))
    out = []
    while remaining:
        root = min(remaining)
        comp, queue = {root}, deque([root])
        while queue:
            v = queue.popleft()
            for u in neighbors(G, v):
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        remaining -= comp
        out.append(sorted(comp))
    return out


def default_orientation(G: SimpleGraph) -> Orientation:
    return {e: e for e in G.edges}


def bfs_levels(G: SimpleGraph, root: int) -> dict[int, int]:
    levels = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in neighbors(G, v):
            if u not in levels:
                levels[u] = levels[v] + 1
                queue.append(u)
    return levels


def level_orientation(T: SimpleGraph, root: int = 0) -> Orientation:
    """Orient a tree by BFS depth from ``root``.

    An edge between depths ``l`` and ``l + 1`` points parent to child when
    ``l`` is even and child to parent when ``l`` is odd.  Every vertex at even
    depth is then a pure source and every vertex at odd depth a pure sink.
    """
    if not is_tree(T):
        raise NotATree(f"{T} is not a tree")
    levels = bfs_levels(T, root)
    orient = {}
    for i, j in T.edges:
        parent, child = (i, j) if levels[i] < levels[j] else (j, i)
        orient[(i, j)] = (parent, child) if levels[parent] % 2 == 0 else (child, parent)
    return orient


def random_orientation(G: SimpleGraph, rng: np.random.Generator) -> Orientation:
    flips = rng.integers(0, 2, size=G.m)
    return {(i, j): ((j, i) if f else (i, j)) for (i, j), f in zip(G.edges, flips)}


def disjoint_union(G1: SimpleGraph, G2: SimpleGraph) -> SimpleGraph:
    shift = G1.n
    return SimpleGraph(G1.n + G2.n, G1.edges + tuple((i + shift, j + shift) for i, j in G2.edges))


def automorphisms(G: SimpleGraph) -> list[tuple[int, ...]]:
    """All vertex permutations ``sigma`` with ``G.sigma == G`` (brute force)."""
    if G.n > MAX_AUTOMORPHISM_N:
        raise TooLarge(f"automorphism search limited to n <= {MAX_AUTOMORPHISM_N}")
    edge_set = set(G.edges)
    degrees = G.degrees()
    out = []
    for sigma in itertools.permutations(range(G.n)):
        if any(degrees[sigma[v]] != degrees[v] for v in range(G.n)):
            continue
        if all((min(sigma[i], sigma[j]), max(sigma[i], sigma[j])) in edge_set for i, j in G.edges):
            out.append(sigma)
    return out


@lru_cache(maxsize=None)
def _pair_tables(n: int):
    """Pair order and, for every relabeling, the source pair feeding each slot."""
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    inverse = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for r, sigma in enumerate(perms):
        inv = [0] * n
        for v, s in enumerate(sigma):
            inv[s] = v
        for k, (a, b) in enumerate(pairs):
            i, j = inv[a], inv[b]
            inverse[r, k] = index[(min(i, j), max(i, j))]
    # first pair is the most significant bit
    weights = np.array([1 << (len(pairs) - 1 - k) for k in range(len(pairs))], dtype=np.int64)
    return pairs, index, inverse, weights


def canonical_form(G: SimpleGraph) -> tuple[int, int]:
    """Lexicographically minimal upper-triangle adjacency code over all relabelings.

    Returns ``(n, code)``; the bits of ``code`` list the pairs ``(0,1), (0,2),
    ..., (n-2,n-1)`` from the most significant bit down.  Two graphs are
    isomorphic iff their canonical forms are equal.
    """
    if G.n > MAX_CANONICAL_N:
        raise TooLarge(f"canonical form limited to n <= {MAX_CANONICAL_N}")
    if G.n <= 1:
        return (G.n, 0)
    pairs, index, inverse, weights = _pair_tables(G.n)
    bits = np.zeros(len(pairs), dtype=np.int64)
    for e in G.edges:
        bits[index[e]] = 1
    codes = bits[inverse] @ weights
    return (G.n, int(codes.min()))


def graph_from_code(n: int, code: int) -> SimpleGraph:
    pairs = list(itertools.combinations(range(n), 2))
    top = len(pairs) - 1
    return SimpleGraph(n, tuple(p for k, p in enumerate(pairs) if code >> (top - k) & 1))


def canonical_graph(G: SimpleGraph) -> SimpleGraph:
    return graph_from_code(*canonical_form(G))


def are_isomorphic(G1: SimpleGraph, G2: SimpleGraph) -> bool:
    return G1.n == G2.n and G1.m == G2.m and canonical_form(G1) == canonical_form(G2)


@lru_cache(maxsize=None)
def _enumerate_all(n: int) -> tuple[SimpleGraph, ...]:
    # grow isomorphism classes one edge at a time
    layer = {canonical_form(empty_graph(n))}
    found = set(layer)
    all_pairs = list(itertools.combinations(range(n), 2))
    for _ in all_pairs:
        nxt = set()
        for code in layer:
            G = graph_from_code(*code)
            present = set(G.edges)
            for p in all_pairs:
                if p not in present:
                    nxt.add(canonical_form(SimpleGraph(n, G.edges + (p,))))
        found |= nxt
        layer = nxt
    graphs = [graph_from_code(*c) for c in found]
    graphs.sort(key=lambda g: (g.m, canonical_form(g)[1]))
    return tuple(graphs)


def enumerate_nonisomorphic(n: int, connected_only: bool = False) -> list[SimpleGraph]:
    """One representative per isomorphism class of graphs on ``n`` vertices.

    Representatives are the canonical graphs, ordered by (edge count,
    canonical code).
    """
    if n > MAX_CANONICAL_N:
        raise TooLarge(f"enumeration limited to n <= {MAX_CANONICAL_N}")
    if n < 1:
        raise ValueError("n must be positive")
    graphs = list(_enumerate_all(n))
    if connected_only:
        graphs = [g for g in graphs if is_connected(g)]
    return graphs


def random_tree(n: int, rng: np.random.Generator) -> SimpleGraph:
    """Uniformly random labeled tree via a Pruefer sequence."""
    if n <= 1:
        return empty_graph(max(n, 0))
    if n == 2:
        return SimpleGraph(2, ((0, 1),))
    seq = list(rng.integers(0, n, size=n - 2))
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, int(v)))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return SimpleGraph(n, tuple(edges))


def random_graph(n: int, p: float, rng: np.random.Generator) -> SimpleGraph:
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return SimpleGraph(n, tuple(e for e, k in zip(pairs, keep) if k))


def permutation_count(G: SimpleGraph) -> int:
    """Size of the source-preserving permutation group, ``prod_v deg(v)!``."""
    return math.prod(math.factorial(d) for d in G.degrees())
