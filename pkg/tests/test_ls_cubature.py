import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poscub import (
    LsConfig,
    algebraic_space,
    compute_moments,
    constant_weight,
    construct_nonnegative_ls_cf,
    gram_schmidt_dob,
    ls_weights,
    make_ball,
    radial_power_weight,
    vandermonde,
)
from poscub.ls_cubature import (
    DobBreakdown,
    NodeCapExceeded,
    discrete_inner_product,
    discrete_weights,
)
from poscub.sequences import PointSequence
from poscub.steinitz import null_vector


def min_norm_oracle(Phi, r, m):
    """argmin ||R^{-1/2} w|| subject to Phi w = m, via the pseudoinverse (w_n = 0 where r_n = 0)."""
    s = np.sqrt(r)
    return s * (np.linalg.pinv(Phi * s) @ m)


def test_discrete_weights_examples(square):
    x4 = PointSequence(square).first(4)
    np.testing.assert_array_equal(discrete_weights(x4, constant_weight(), 4.0), np.ones(4))
    x8 = PointSequence(square).first(8)
    np.testing.assert_array_equal(discrete_weights(x8, constant_weight(), 4.0), np.full(8, 0.5))
    r = discrete_weights(np.array([[0.0, 0.0], [0.5, 0.0]]), radial_power_weight(0.5), 1.0)
    assert r[0] == 0 and r[1] > 0


def test_inner_product_examples():
    assert discrete_inner_product(np.ones(4), np.ones(4), np.ones(4)) == 4
    x = np.array([-1.0, -0.5, 0.5, 1.0])
    assert discrete_inner_product(np.ones(4), x, np.array([1.0, 2.0, 2.0, 1.0])) == 0
    assert discrete_inner_product([-1, 1], [-1, 1], [1, 1]) == 2
    with pytest.raises(ValueError):
        discrete_inner_product([1, 2], [1, 2, 3], [1, 1])


def test_dob_constant_only():
    dob = gram_schmidt_dob(np.ones((1, 4)), np.ones(4))
    np.testing.assert_allclose(dob.C, [[0.5]])


def test_dob_two_points():
    Phi = np.array([[1.0, 1.0], [-1.0, 1.0]])
    dob = gram_schmidt_dob(Phi, np.ones(2))
    np.testing.assert_allclose(dob.C @ Phi, [[1 / np.sqrt(2)] * 2, [-1 / np.sqrt(2), 1 / np.sqrt(2)]], atol=1e-15)


def test_dob_breakdown_on_single_effective_node():
    Phi = np.array([[1.0, 1.0, 1.0], [-1.0, 0.0, 1.0]])
    dob = gram_schmidt_dob(Phi, np.array([0.0, 1.0, 0.0]))
    assert dob.breakdown and dob.rank == 1
    with pytest.raises(DobBreakdown):
        ls_weights(dob, Phi, np.array([0.0, 1.0, 0.0]), np.array([2.0, 0.0]))


def test_ls_weights_examples():
    Phi = np.ones((1, 4))
    r = np.ones(4)
    np.testing.assert_allclose(ls_weights(gram_schmidt_dob(Phi, r), Phi, r, [4.0]), np.ones(4))
    Phi = np.array([[1.0, 1.0, 1.0], [-1.0, 0.0, 1.0]])
    r = np.full(3, 2 / 3)
    np.testing.assert_allclose(ls_weights(gram_schmidt_dob(Phi, r), Phi, r, [2.0, 0.0]), np.full(3, 2 / 3))


@st.composite
def ls_instances(draw):
    d = draw(st.integers(1, 2))
    m = draw(st.integers(0, 3 if d == 1 else 2))
    space = algebraic_space(d, m)
    K = space.K
    N = draw(st.integers(K, 40))
    seed = draw(st.integers(0, 2**32 - 1))
    g = np.random.default_rng(seed)
    x = g.uniform(-1, 1, size=(N, d))
    r = g.uniform(0.1, 2.0, size=N)
    if draw(st.booleans()) and N > K + 1:
        r[g.choice(N, size=draw(st.integers(1, N - K - 1)), replace=False)] = 0.0
    mom = g.normal(size=K)
    mom[0] = abs(mom[0]) + 0.5
    return vandermonde(space, x), r, mom


@settings(max_examples=60, deadline=None)
@given(ls_instances())
def test_ls_matches_pinv_oracle(inst):
    Phi, r, m = inst
    dob = gram_schmidt_dob(Phi, r)
    if dob.breakdown:
        assert np.linalg.matrix_rank(Phi[:, r > 0] * np.sqrt(r[r > 0]), tol=1e-8) < Phi.shape[0]
        return
    w = ls_weights(dob, Phi, r, m)
    ref = min_norm_oracle(Phi, r, m)
    assert np.linalg.norm(w - ref) <= 1e-8 * np.linalg.norm(ref)
    assert np.all(w[r == 0] == 0)
    assert np.max(np.abs(Phi @ w - m)) <= 1e-8 * (1 + np.max(np.abs(m)))
    # DOB orthonormality
    Q = dob.C @ Phi
    G = (Q * r) @ Q.T
    assert np.max(np.abs(G - np.eye(len(G)))) <= 1e-8


@settings(max_examples=30, deadline=None)
@given(ls_instances())
def test_ls_solution_is_orthogonal_to_null_space(inst):
    Phi, r, m = inst
    dob = gram_schmidt_dob(Phi, r)
    pos = r > 0
    if dob.breakdown or pos.sum() <= Phi.shape[0]:
        return
    w = ls_weights(dob, Phi, r, m)
    a = null_vector(Phi[:, pos])
    assert abs(np.sum(w[pos] * a / r[pos])) <= 1e-8 * np.linalg.norm(a) * np.linalg.norm(w)


def test_doubling_on_square_degree_zero(square):
    s = algebraic_space(2, 0)
    res = construct_nonnegative_ls_cf(
        square, constant_weight(), s, PointSequence(square), compute_moments(s, square, constant_weight())
    )
    assert len(res.nodes) == 1
    np.testing.assert_allclose(res.weights, [4.0])


def test_doubling_on_square_degree_two(square):
    s = algebraic_space(2, 2)
    mom = compute_moments(s, square, constant_weight())
    res = construct_nonnegative_ls_cf(square, constant_weight(), s, PointSequence(square), mom)
    N = len(res.nodes)
    assert N % 6 == 0 and (N // 6) & (N // 6 - 1) == 0
    assert np.all(res.weights >= 0)
    assert res.residual <= 1e-10 * (1 + np.max(np.abs(mom.values)))
    ref = min_norm_oracle(res.Phi, res.r, mom.values)
    np.testing.assert_allclose(res.weights, ref, rtol=0, atol=1e-10 * np.max(np.abs(ref)))
    assert [h["N"] for h in res.history] == [6 * 2**i for i in range(len(res.history))]


def test_ball_with_sqrt_weight(ball3):
    s = algebraic_space(3, 2)
    w = radial_power_weight(0.5)
    mom = compute_moments(s, ball3, w)
    res = construct_nonnegative_ls_cf(ball3, w, s, PointSequence(ball3), mom)
    assert np.all(res.weights >= 0)
    assert res.residual <= 1e-10 * (1 + np.max(np.abs(mom.values)))
    assert np.all(ball3.contains(res.nodes))


def test_node_cap(square):
    s = algebraic_space(2, 4)
    mom = compute_moments(s, square, constant_weight())
    with pytest.raises(NodeCapExceeded):
        construct_nonnegative_ls_cf(square, constant_weight(), s, PointSequence(square), mom, LsConfig(n_cap=30))


def test_doubling_is_logged(square, caplog):
    s = algebraic_space(2, 2)
    mom = compute_moments(s, square, constant_weight())
    with caplog.at_level(logging.INFO, logger="poscub.ls_cubature"):
        res = construct_nonnegative_ls_cf(square, constant_weight(), s, PointSequence(square), mom)
    assert len([r for r in caplog.records if "LS rule" in r.getMessage()]) == len(res.history)


def test_svd_rank_cross_check(disk):
    s = algebraic_space(2, 3)
    mom = compute_moments(s, disk, constant_weight())
    res = construct_nonnegative_ls_cf(
        disk, constant_weight(), s, PointSequence(disk), mom, LsConfig(check_rank_svd=True)
    )
    for h in res.history:
        assert (h["svd_rank"] == s.K) == (h["rank"] == s.K)


def test_moment_length_mismatch(square):
    s = algebraic_space(2, 1)
    mom = compute_moments(algebraic_space(2, 2), square, constant_weight())
    with pytest.raises(ValueError):
        construct_nonnegative_ls_cf(square, constant_weight(), s, PointSequence(square), mom)


def test_weight_zero_at_origin_gives_zero_ls_weight():
    disk = make_ball([0, 0], 1)
    s = algebraic_space(2, 1)
    w = radial_power_weight(0.5)
    x = np.array([[0.0, 0.0], [0.5, 0.0], [0.0, 0.5], [-0.5, -0.5], [0.3, -0.6]])
    r = discrete_weights(x, w, disk.volume)
    Phi = vandermonde(s, x)
    wl = ls_weights(gram_schmidt_dob(Phi, r), Phi, r, compute_moments(s, disk, w).values)
    assert wl[0] == 0.0
