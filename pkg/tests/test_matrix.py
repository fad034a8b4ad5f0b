import itertools
import math

import numpy as np
import pytest

from graph_amplitude import graphs as gr
from graph_amplitude.amplitude import amplitude_bruteforce, build_spinor_system
from graph_amplitude.errors import BudgetExceeded, DimensionMismatch, NotPSD, TooLarge
from graph_amplitude.matrix import (
    Partition,
    check_conjecture_d,
    f_sim,
    gram_matrix,
    group_elements,
    group_order,
    intersection_order,
    is_psd,
    matrix_from_json,
    matrix_to_json,
    meet,
    permanent,
    random_partition,
    random_psd,
    set_partitions,
)

from conftest import random_spinor, rel_close

P = Partition.parse


def permanent_naive(M):
    n = M.shape[0]
    return sum(math.prod(M[i, s[i]] for i in range(n)) for s in itertools.permutations(range(n)))


def test_partition_parse_and_canonical():
    p = P("2|1,0")
    assert p.blocks == ((0, 1), (2,))
    assert str(p) == "0,1|2"
    with pytest.raises(ValueError):
        Partition(3, ((0, 1),))


def test_group_order():
    assert group_order(P("0|1|2")) == 1
    assert group_order(P("0,1,2")) == 6
    assert group_order(P("0,1|2,3")) == 4
    with pytest.raises(OverflowError):
        group_order(Partition.indiscrete(21))


def test_meet():
    assert meet(P("0,1|2"), P("0,1,2")) == P("0,1|2")
    assert intersection_order(P("0,1|2"), P("0,1,2")) == 2
    assert meet(P("0,1|2,3"), P("0,2|1,3")).is_discrete()
    assert intersection_order(P("0,1|2,3"), P("0,2|1,3")) == 1
    p = P("0,3|1,2,4")
    assert meet(p, p) == p and intersection_order(p, p) == group_order(p)


def test_intersection_order_by_enumeration():
    for p1, p2 in itertools.product(set_partitions(4), repeat=2):
        g1 = {tuple(r) for r in group_elements(p1)}
        g2 = {tuple(r) for r in group_elements(p2)}
        assert intersection_order(p1, p2) == len(g1 & g2)


def test_set_partitions_bell_numbers():
    assert [len(set_partitions(n)) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


def test_permanent_examples(rng):
    assert permanent(np.eye(3)) == 1
    assert permanent(np.ones((2, 2))) == 2
    for n in range(1, 7):
        M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert rel_close(permanent(M), permanent_naive(M), 1e-10)
    with pytest.raises(TooLarge):
        permanent(np.eye(21))


def test_f_sim_examples():
    assert f_sim(np.eye(3), Partition.discrete(3), Partition.indiscrete(3)) == 1
    assert f_sim(np.ones((2, 2)), Partition.indiscrete(2), Partition.indiscrete(2)) == 4
    v = check_conjecture_d(np.ones((2, 2)), Partition.indiscrete(2), Partition.indiscrete(2))
    assert v.bound == 2 and v.holds


def test_f_sim_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        f_sim(np.eye(3), Partition.discrete(2), Partition.discrete(2))


def test_f_sim_budget():
    with pytest.raises(BudgetExceeded):
        f_sim(np.eye(8), Partition.indiscrete(8), Partition.indiscrete(8), budget=1000)


def test_marcus_configuration_is_permanent(rng):
    for n in range(1, 7):
        A = random_psd(n, rng)
        value = f_sim(A, Partition.discrete(n), Partition.indiscrete(n))
        assert value == permanent(A)
        assert abs(value.imag) <= 1e-10 * max(1, abs(value))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fast_paths_match_double_sum(n):
    rng = np.random.default_rng(n)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    d = Partition.discrete(n)
    for p in set_partitions(n):
        assert rel_close(f_sim(A, d, p), f_sim(A, d, p, fast=False), 1e-10)
        assert rel_close(f_sim(A, p, d), f_sim(A, p, d, fast=False), 1e-10)


def test_swap_conjugates_for_hermitian(rng):
    for _ in range(50):
        n = int(rng.integers(1, 6))
        B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        A = B + B.conj().T
        p1, p2 = random_partition(n, rng), random_partition(n, rng)
        assert rel_close(f_sim(A, p2, p1), f_sim(A, p1, p2).conjugate(), 1e-10)


def test_random_psd(rng):
    A = random_psd(5, 7)
    np.testing.assert_array_equal(A, random_psd(5, 7))
    assert np.abs(A - A.conj().T).max() <= 1e-14
    assert np.linalg.eigvalsh(A).min() >= -1e-10
    assert is_psd(A)


def test_gram_matrix(rng):
    np.testing.assert_allclose(gram_matrix([(1, 0), (0, 1)]), np.eye(2))
    np.testing.assert_allclose(gram_matrix([(0.6, 0.8j)]), [[1]])
    G = gram_matrix([random_spinor(rng) for _ in range(6)])
    assert np.linalg.eigvalsh(G).min() >= -1e-10


def test_check_conjecture_d_identity():
    for p1, p2 in itertools.product(set_partitions(3), repeat=2):
        v = check_conjecture_d(np.eye(3), p1, p2)
        assert v.holds and v.f.imag == 0


def test_check_conjecture_d_zero_diagonal():
    A = np.zeros((2, 2))
    v = check_conjecture_d(A, Partition.indiscrete(2), Partition.discrete(2))
    assert v.bound == 0 and v.holds


def test_check_conjecture_d_rejects_non_psd():
    with pytest.raises(NotPSD):
        check_conjecture_d(np.diag([1.0, -1.0]), Partition.discrete(2), Partition.discrete(2))


def test_conjecture_d_random(rng):
    for _ in range(200):
        n = int(rng.integers(1, 6))
        A = random_psd(n, rng)
        assert check_conjecture_d(A, random_partition(n, rng), random_partition(n, rng)).holds


def test_tree_gram_bridge(rng):
    for _ in range(20):
        T = gr.random_tree(int(rng.integers(2, 8)), rng)
        x = rng.standard_normal((T.n, 3))
        orient = gr.level_orientation(T, 0)
        sys = build_spinor_system(T, x, orient)
        edges = [orient[e] for e in T.edges]
        A = gram_matrix([sys.psi[e] for e in edges])
        p1 = Partition.from_labels([i for i, _ in edges])
        p2 = Partition.from_labels([j for _, j in edges])
        value = f_sim(A, p1, p2, fast=False).conjugate()
        assert rel_close(value, amplitude_bruteforce(sys).value, 1e-8)


def test_matrix_json_roundtrip(rng):
    A = random_psd(3, rng)
    np.testing.assert_array_equal(matrix_from_json(matrix_to_json(A)), A)
