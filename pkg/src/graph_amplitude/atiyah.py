"""Normalized Atiyah determinant of a configuration of distinct points.

Point ``i`` gets the degree ``n-1`` polynomial whose roots are the sphere
images of the directions toward the other points.  In homogeneous form each
root contributes the linear factor ``alpha t - beta`` built from the spinor
``(alpha, beta)`` of that direction, so no root is ever at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CoincidentPoints
from .geometry import as_configuration, direction, hopf_lift, omega


@dataclass(frozen=True)
class DeterminantResult:
    value: complex
    raw_det: complex
    normalizer: complex

    def to_json(self) -> dict:
        return {"d_re": self.value.real, "d_im": self.value.imag, "abs_d": abs(self.value)}


def a_constant(n: int) -> int:
    """``prod_{k=1}^{n-1} (k!)^2``, the complete-graph scale factor."""
    if n < 2:
        raise ValueError("a_constant needs n >= 2")
    return math.prod(math.factorial(k) ** 2 for k in range(1, n))


def _spinor_table(x: np.ndarray) -> dict:
    n = x.shape[0]
    psi = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                try:
                    psi[(i, j)] = hopf_lift(direction(x[i], x[j]))
                except CoincidentPoints as exc:
                    raise CoincidentPoints(str(exc), edge=(min(i, j), max(i, j))) from None
    return psi


def _polynomials(psi: dict, n: int) -> list[np.ndarray]:
    polys = []
    for i in range(n):
        coeffs = np.array([1.0 + 0j])
        for j in range(n):
            if j == i:
                continue
            alpha, beta = psi[(i, j)]
            # multiply by (alpha t - beta); index k holds the t^k coefficient
            nxt = np.zeros(len(coeffs) + 1, dtype=complex)
            nxt[1:] += alpha * coeffs
            nxt[:-1] -= beta * coeffs
            coeffs = nxt
        polys.append(coeffs)
    return polys


def atiyah_polynomials(x) -> list[np.ndarray]:
    """Coefficient vectors (ascending powers) of the ``n`` point polynomials."""
    x = as_configuration(x)
    return _polynomials(_spinor_table(x), x.shape[0])


def _raw(x: np.ndarray):
    n = x.shape[0]
    psi = _spinor_table(x)
    matrix = np.column_stack(_polynomials(psi, n))
    raw = complex(np.linalg.det(matrix))
    normalizer = complex(math.prod(omega(psi[(i, j)], psi[(j, i)])
                                   for i in range(n) for j in range(i + 1, n)))
    return raw, normalizer


@lru_cache(maxsize=None)
def sign_fix(n: int) -> int:
    """Global sign making ``D = 1`` on the points ``(0, 0, k)``, ``k < n``."""
    line = np.zeros((n, 3))
    line[:, 2] = np.arange(n)
    raw, normalizer = _raw(line)
    return 1 if (raw / normalizer).real > 0 else -1


def atiyah_determinant(x) -> DeterminantResult:
    x = as_configuration(x)
    n = x.shape[0]
    if n < 1:
        raise ValueError("need at least one point")
    if n == 1:
        return DeterminantResult(1 + 0j, 1 + 0j, 1 + 0j)
    raw, normalizer = _raw(x)
    return DeterminantResult(sign_fix(n) * raw / normalizer, raw, normalizer)
