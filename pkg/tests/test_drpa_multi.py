import numpy as np
import pytest

from pagerank_lab.centralized import apply_google, pagerank_oracle, uniform_vector
from pagerank_lab.drpa_multi import (
    alpha2,
    apply_multi_link,
    build_multi_link_matrix,
    dense_multi_link_matrix,
    expected_multi_matrix,
    run_drpa_multi,
    sample_update_pattern,
    simulate_multi,
)
from pagerank_lab.drpa_single import build_distributed_link_matrix
from pagerank_lab.errors import EnumerationLimitExceeded, InvalidBeta
from pagerank_lab.graph import build_link_matrix, generate_random_graph
from pagerank_lab.rng import philox_stream

from conftest import seeded_graphs


def test_alpha2_values():
    assert alpha2(0.15, 1.0) == 0.15
    assert abs(alpha2(0.15, 0.5) - 0.1125 / 0.9625) < 1e-15
    assert alpha2(0.15, 1e-6) < 1e-5


def test_alpha2_bounded_by_alpha():
    for alpha in (0.05, 0.15, 0.5):
        for beta in (0.1, 0.4, 0.9, 1.0):
            a2 = alpha2(alpha, beta)
            assert 0.0 < a2 <= alpha


def test_alpha2_rejects_bad_beta():
    with pytest.raises(InvalidBeta):
        alpha2(0.15, 0.0)
    with pytest.raises(InvalidBeta):
        alpha2(0.15, 1.5)


def test_pattern_all_ones_at_beta_one():
    rng = philox_stream(5, 0)
    for _ in range(20):
        assert sample_update_pattern(1.0, 8, rng).all()


def test_pattern_deterministic():
    a = sample_update_pattern(0.5, 50, philox_stream(9, 1))
    b = sample_update_pattern(0.5, 50, philox_stream(9, 1))
    assert np.array_equal(a, b)


def test_pattern_binomial_concentration():
    n = 10_000
    pop = int(sample_update_pattern(0.5, n, philox_stream(123, 0)).sum())
    assert abs(pop - n / 2) <= 5 * np.sqrt(n * 0.25)


def test_apply_all_ones_equals_link_matrix(cycle3_matrix):
    x = np.array([0.2, 0.3, 0.5])
    y = apply_multi_link(cycle3_matrix, np.ones(3, dtype=np.uint8), x)
    assert np.abs(y - cycle3_matrix.matvec(x)).max() == 0.0


def test_apply_all_zeros_is_identity(cycle3_matrix):
    x = np.array([0.2, 0.3, 0.5])
    y = apply_multi_link(cycle3_matrix, np.zeros(3, dtype=np.uint8), x)
    assert np.array_equal(y, x)


def test_apply_one_hot_matches_single_page(cycle3_matrix):
    y = apply_multi_link(cycle3_matrix, np.array([1, 0, 0], dtype=np.uint8), uniform_vector(3))
    assert np.abs(y - np.array([1 / 3, 2 / 3, 0.0])).max() < 1e-15


def test_apply_matches_dense_on_random_patterns():
    rng = np.random.default_rng(14)
    for g in seeded_graphs(8, (3, 20), 0.3, base_seed=400):
        A = build_link_matrix(g)
        a_dense = A.to_dense()
        for _ in range(5):
            p = (rng.random(g.n) < 0.5).astype(np.uint8)
            x = rng.random(g.n)
            x /= x.sum()
            dense = dense_multi_link_matrix(a_dense, p)
            assert np.abs(apply_multi_link(A, p, x) - dense @ x).max() < 1e-12


def test_pattern_matrices_stochastic_exhaustive():
    for g in seeded_graphs(5, (3, 8), 0.3, base_seed=500):
        A = build_link_matrix(g)
        for mask in range(2**g.n):
            p = np.array([(mask >> i) & 1 for i in range(g.n)], dtype=np.uint8)
            M = build_multi_link_matrix(A, p)
            M.validate(tol=1e-12)
            if M.nnz:
                assert M.vals.min() >= 0.0 and M.vals.max() <= 1.0


def test_one_hot_pattern_bit_equal_to_single_builder():
    for g in seeded_graphs(8, (3, 30), 0.25, base_seed=600):
        A = build_link_matrix(g)
        for i in range(g.n):
            e_i = np.zeros(g.n, dtype=np.uint8)
            e_i[i] = 1
            assert build_multi_link_matrix(A, e_i).equals_exact(
                build_distributed_link_matrix(A, i)
            )


def test_expected_matrix_identity(cycle3_matrix):
    _, residual = expected_multi_matrix(cycle3_matrix, 0.15, 0.5)
    assert residual <= 1e-12


def test_expected_matrix_beta_one_equals_google(cycle3_matrix):
    from pagerank_lab.centralized import google_matrix_dense

    m2, residual = expected_multi_matrix(cycle3_matrix, 0.15, 1.0)
    assert residual <= 1e-12
    assert np.array_equal(m2, google_matrix_dense(cycle3_matrix, 0.15))


def test_expected_matrix_identity_random_graphs():
    for g in seeded_graphs(10, (3, 8), 0.3, base_seed=700):
        A = build_link_matrix(g)
        for beta in (0.1, 0.5, 0.9):
            _, residual = expected_multi_matrix(A, 0.15, beta)
            assert residual <= 1e-12


def test_expected_matrix_enumeration_guard():
    g = generate_random_graph(13, 0.3, 2)
    with pytest.raises(EnumerationLimitExceeded):
        expected_multi_matrix(build_link_matrix(g), 0.15, 0.5)


def test_expected_matrix_fixes_oracle(chain3, chain3_matrix):
    m2, _ = expected_multi_matrix(chain3_matrix, 0.15, 0.5)
    x_star = pagerank_oracle(chain3, 0.15)
    assert np.abs(m2 @ x_star - x_star).sum() < 1e-10


def test_beta_one_run_matches_power_iterates():
    g = generate_random_graph(5, 0.4, 77)
    A = build_link_matrix(g)
    steps = 1000
    res = simulate_multi(A, 0.15, 1.0, steps, seed=3, schedule=range(1, steps + 1))
    x = uniform_vector(5)
    worst = 0.0
    for k in range(steps):
        x = apply_google(A, 0.15, x)
        worst = max(worst, float(np.abs(res.x_samples[k] - x).max()))
    assert worst <= 1e-12


def test_simulate_matches_manual_loop(chain3_matrix):
    alpha, beta, steps = 0.15, 0.5, 800
    sched = list(range(50, steps + 1, 50))
    res = simulate_multi(chain3_matrix, alpha, beta, steps, seed=42, schedule=sched)
    a2 = alpha2(alpha, beta)
    rng = philox_stream(42, 0)
    x = uniform_vector(3)
    xbar = x.copy()
    worst = 0.0
    ptr = 0
    for t in range(steps):
        p = sample_update_pattern(beta, 3, rng)
        y = apply_multi_link(chain3_matrix, p, x)
        xbar = xbar - (xbar - x) / (t + 1)
        x = (1.0 - a2) * y + a2 / 3
        if ptr < len(sched) and sched[ptr] == t + 1:
            worst = max(worst, float(np.abs(x - res.x_samples[ptr]).max()))
            worst = max(worst, float(np.abs(xbar - res.x_bar_samples[ptr]).max()))
            ptr += 1
    assert ptr == len(sched)
    assert worst < 1e-12


def test_simulate_simplex_drift(chain3_matrix):
    res = simulate_multi(chain3_matrix, 0.15, 0.5, 100_000, seed=6)
    assert abs(res.final_x.sum() - 1.0) < 1e-9
    assert abs(res.final_x_bar.sum() - 1.0) < 1e-9
    assert res.mean_drift < 1e-9


def test_run_deterministic(chain3):
    a = run_drpa_multi(chain3, 0.15, 0.5, 5000, seed=11)
    b = run_drpa_multi(chain3, 0.15, 0.5, 5000, seed=11)
    assert a == b
    assert a.meta.beta == 0.5
    assert a.meta.protocol == "multi"


def test_multi_error_shrinks_with_horizon():
    g = generate_random_graph(10, 0.3, 999)
    traj = run_drpa_multi(g, 0.15, 0.5, 100_000, seed=2)
    by_k = {s.k: s.err_l1 for s in traj.samples}
    assert by_k[100_000] < by_k[1024]
