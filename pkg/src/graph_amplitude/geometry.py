"""Pairwise directions, spinor lifts and the bilinear forms on C^2.

Points and directions are float arrays of shape ``(3,)``; spinors are complex
arrays of shape ``(2,)``.  A configuration is an ``(n, 3)`` float array.
"""

import numpy as np

from .errors import CoincidentPoints

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_1, SIGMA_2, SIGMA_3])

# omega(u, v) = u^T OMEGA v
OMEGA = np.array([[0, 1], [-1, 0]], dtype=complex)

SEPARATION_EPS = 1e-12


def as_configuration(points) -> np.ndarray:
    """Coerce ``points`` to a finite ``(n, 3)`` float array."""
    x = np.asarray(points, dtype=float)
    if x.ndim != 2 or x.shape[1] != 3:
        raise ValueError(f"configuration must have shape (n, 3), got {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("configuration contains non-finite coordinates")
    return x


def separation_threshold(p, q, eps=SEPARATION_EPS) -> float:
    return eps * max(1.0, float(np.linalg.norm(p)), float(np.linalg.norm(q)))


def direction(p, q, eps=SEPARATION_EPS) -> np.ndarray:
    """Unit vector pointing from ``p`` to ``q``.

    Raises
    ------
    CoincidentPoints
        If ``|q - p|`` does not exceed ``eps * max(1, |p|, |q|)``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    d = q - p
    norm = float(np.linalg.norm(d))
    if not norm > separation_threshold(p, q, eps):
        raise CoincidentPoints(f"points {p.tolist()} and {q.tolist()} coincide")
    return d / norm


def pauli_dot(u) -> np.ndarray:
    """The Hermitian matrix ``u . sigma``."""
    return np.tensordot(np.asarray(u, dtype=float), PAULI, axes=1)


def hopf_lift(u) -> np.ndarray:
    """Normalized +1 eigenvector of ``u . sigma`` for a unit vector ``u``.

    The phase is fixed by a two-chart rule: the northern chart (``z >= 0``)
    keeps the first component real and positive, the southern chart keeps
    the second one real and positive.  Each chart stays away from its
    singular pole.
    """
    x, y, z = (float(c) for c in u)
    if z >= 0.0:
        s = np.sqrt(2.0 * (1.0 + z))
        return np.array([(1.0 + z) / s, complex(x, y) / s])
    s = np.sqrt(2.0 * (1.0 - z))
    return np.array([complex(x, -y) / s, (1.0 - z) / s])


def hopf_lift_many(u: np.ndarray) -> np.ndarray:
    """Vectorized :func:`hopf_lift` over an ``(m, 3)`` array of unit vectors."""
    u = np.asarray(u, dtype=float).reshape(-1, 3)
    x, y, z = u[:, 0], u[:, 1], u[:, 2]
    north = z >= 0.0
    out = np.empty((u.shape[0], 2), dtype=complex)
    sn = np.sqrt(2.0 * (1.0 + z[north]))
    out[north, 0] = (1.0 + z[north]) / sn
    out[north, 1] = (x[north] + 1j * y[north]) / sn
    south = ~north
    ss = np.sqrt(2.0 * (1.0 - z[south]))
    out[south, 0] = (x[south] - 1j * y[south]) / ss
    out[south, 1] = (1.0 - z[south]) / ss
    return out


def omega(phi, psi) -> complex:
    """Skew form ``phi_a psi_b - psi_a phi_b``."""
    return complex(phi[0] * psi[1] - psi[0] * phi[1])


def jtilde(psi) -> np.ndarray:
    """Antilinear map ``(a, b) -> (-conj(b), conj(a))``; squares to ``-1``."""
    psi = np.asarray(psi, dtype=complex)
    return np.array([-np.conj(psi[1]), np.conj(psi[0])])


def inner(phi, psi) -> complex:
    """Hermitian product, antilinear in the first argument."""
    return complex(np.vdot(phi, psi))
