"""Literal tensor evaluation of the amplitude for graphs with few edges.

The product tensor of all edge spinors has one ``C^2`` slot per directed
pair.  It is symmetrized over source-preserving slot permutations, then
either antisymmetrized over per-edge slot swaps (projecting onto a line)
or contracted edge by edge with the skew form.  Both are exponential in the
edge count and exist to check the fast evaluators.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import graphs as gr
from .amplitude import AmplitudeResult
from .errors import TooLarge
from .geometry import OMEGA, as_configuration, direction, hopf_lift, omega

MAX_ORACLE_EDGES = 5


def _slot_tensor(G: gr.SimpleGraph, x, orientation):
    x = as_configuration(x)
    if G.m > MAX_ORACLE_EDGES:
        raise TooLarge(f"tensor oracle limited to {MAX_ORACLE_EDGES} edges")
    if orientation is None:
        orientation = gr.default_orientation(G)
    slots = G.directed_pairs()
    psi = {(i, j): hopf_lift(direction(x[i], x[j])) for i, j in slots}
    T = np.ones((), dtype=complex)
    for s in slots:
        T = np.multiply.outer(T, psi[s])
    for i, j in orientation.values():
        T = T / omega(psi[(i, j)], psi[(j, i)])
    return T, slots, orientation


def _symmetrize_sources(T: np.ndarray, slots) -> tuple[np.ndarray, int]:
    index = {s: k for k, s in enumerate(slots)}
    by_source: dict = {}
    for i, j in slots:
        by_source.setdefault(i, []).append(j)
    choices = [[(i, js, p) for p in itertools.permutations(js)] for i, js in sorted(by_source.items())]
    out = np.zeros_like(T)
    count = 0
    for combo in itertools.product(*choices):
        perm = list(range(len(slots)))
        for i, js, image in combo:
            for j, k in zip(js, image):
                perm[index[(i, j)]] = index[(i, k)]
        # slot s of the result receives the factor from slot perm[s]
        out += np.transpose(T, perm)
        count += 1
    return out, count


def amplitude_tensor_oracle(G: gr.SimpleGraph, x, orientation=None) -> AmplitudeResult:
    """Project the symmetrized tensor onto the image of the signed swap sum.

    The image is spanned by the product over oriented edges ``(i, j)`` of
    ``e1 (x) e2 - e2 (x) e1`` in slots ``((i, j), (j, i))``; the returned
    value is the coefficient against that vector.
    """
    T, slots, orientation = _slot_tensor(G, x, orientation)
    S, count = _symmetrize_sources(T, slots)
    index = {s: k for k, s in enumerate(slots)}
    pairs = [(index[(i, j)], index[(j, i)]) for i, j in orientation.values()]
    Q = np.zeros_like(S)
    for flips in itertools.product((0, 1), repeat=len(pairs)):
        perm = list(range(len(slots)))
        for (a, b), f in zip(pairs, flips):
            if f:
                perm[a], perm[b] = b, a
        Q += (-1) ** sum(flips) * np.transpose(S, perm)
    # basis vector has entry 1 at (slot (i,j) = 0, slot (j,i) = 1) for every edge
    probe = [0] * len(slots)
    for a, b in pairs:
        probe[a], probe[b] = 0, 1
    value = Q[tuple(probe)] if slots else Q[()]
    return AmplitudeResult(complex(value), "tensor_oracle", count)


def amplitude_tensor_contraction(G: gr.SimpleGraph, x, orientation=None, edge_order=None) -> AmplitudeResult:
    """Contract the symmetrized tensor with the skew form, one edge at a time.

    ``edge_order`` lists undirected edges in the order their slot pairs are
    contracted; the result does not depend on it.
    """
    T, slots, orientation = _slot_tensor(G, x, orientation)
    S, count = _symmetrize_sources(T, slots)
    live = list(slots)
    for e in edge_order if edge_order is not None else G.edges:
        i, j = orientation[e]
        a, b = live.index((i, j)), live.index((j, i))
        S = np.tensordot(S, OMEGA, axes=([a, b], [0, 1]))
        live = [s for s in live if s not in ((i, j), (j, i))]
    return AmplitudeResult(complex(S), "tensor_contraction", count)
