import math

import numpy as np
import pytest

from graph_amplitude import graphs as gr
from graph_amplitude.amplitude import amplitude_bruteforce, build_spinor_system
from graph_amplitude.atiyah import a_constant, atiyah_determinant, atiyah_polynomials, sign_fix
from graph_amplitude.errors import CoincidentPoints
from graph_amplitude.geometry import direction, hopf_lift

from conftest import random_rotation, rel_close


def test_a_constant():
    assert a_constant(2) == 1
    assert a_constant(3) == 4
    assert a_constant(4) == 144
    # independent exact evaluation for n = 5
    assert a_constant(5) == (1 * 2 * 6 * 24) ** 2 == 82944
    assert a_constant(6) == 82944 * math.factorial(5) ** 2


def test_polynomials_axis_case():
    p0, p1 = atiyah_polynomials([[0, 0, 0], [0, 0, 1]])
    np.testing.assert_allclose(p0, [0, 1])
    np.testing.assert_allclose(p1, [-1, 0])


def test_polynomials_collinear_double_root():
    p0 = atiyah_polynomials([[0, 0, 0], [0, 0, 1], [0, 0, 2]])[0]
    np.testing.assert_allclose(p0, [0, 0, 1])


def test_polynomial_roots(rng):
    for _ in range(20):
        x = rng.standard_normal((3, 3))
        for i, p in enumerate(atiyah_polynomials(x)):
            roots = np.sort_complex(np.roots(p[::-1]))
            expected = []
            for j in range(3):
                if j != i:
                    alpha, beta = hopf_lift(direction(x[i], x[j]))
                    expected.append(beta / alpha)
            np.testing.assert_allclose(roots, np.sort_complex(np.array(expected)), atol=1e-10)


def test_coincident():
    with pytest.raises(CoincidentPoints):
        atiyah_determinant([[0, 0, 0], [1, 2, 3], [1, 2, 3]])


def test_two_points_is_one(rng):
    for _ in range(50):
        assert abs(atiyah_determinant(rng.standard_normal((2, 3))).value - 1) <= 1e-12


def test_sign_fix_is_positive():
    assert all(sign_fix(n) == 1 for n in range(2, 8))


@pytest.mark.parametrize("n", range(2, 7))
def test_collinear_is_one(n, rng):
    for _ in range(10):
        base, axis = rng.standard_normal(3), rng.standard_normal(3)
        x = base + np.outer(rng.permutation(rng.uniform(-3, 3, n)), axis)
        assert abs(atiyah_determinant(x).value - 1) <= 1e-9


def test_three_points_at_least_one(rng):
    for _ in range(200):
        assert abs(atiyah_determinant(rng.standard_normal((3, 3))).value) >= 1 - 1e-9


def test_symmetries(rng):
    for _ in range(20):
        x = rng.standard_normal((5, 3))
        d = atiyah_determinant(x).value
        y = 2.5 * x @ random_rotation(rng).T + rng.standard_normal(3)
        assert rel_close(atiyah_determinant(y).value, d, 1e-8)
        assert rel_close(atiyah_determinant(-x).value, d.conjugate(), 1e-8)
        assert rel_close(atiyah_determinant(x[rng.permutation(5)]).value, d, 1e-8)


def test_phase_invariance_of_normalized_value(rng):
    # raw determinant and normalizer pick up the same phase from each spinor
    x = rng.standard_normal((4, 3))
    res = atiyah_determinant(x)
    assert res.value == pytest.approx(res.raw_det / res.normalizer)
    assert abs(res.normalizer) > 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_amplitude_identity(n, rng):
    for _ in range(10):
        x = rng.standard_normal((n, 3))
        bf = amplitude_bruteforce(build_spinor_system(gr.complete_graph(n), x)).value
        assert rel_close(a_constant(n) * atiyah_determinant(x).value, bf, 1e-8)
