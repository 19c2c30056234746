import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poscub import algebraic_space, constant_weight, custom_space, make_cube, trigonometric_space, vandermonde
from poscub.function_space import space_from_descriptor, total_degree_exponents
from poscub.moments import qmc_moments
from poscub.sequences import PointSequence


@pytest.mark.parametrize("d,m,K", [(3, 2, 10), (2, 1, 3), (2, 0, 1), (2, 2, 6), (3, 4, 35)])
def test_algebraic_dimension(d, m, K):
    assert algebraic_space(d, m).K == K


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 6))
def test_algebraic_dimension_matches_enumeration(d, m):
    brute = {a for a in itertools.product(range(m + 1), repeat=d) if sum(a) <= m}
    exps = total_degree_exponents(d, m)
    assert len(exps) == math.comb(m + d, d) == len(brute)
    assert {tuple(a) for a in exps} == brute
    assert tuple(exps[0]) == (0,) * d
    assert np.all(np.diff(exps.sum(axis=1)) >= 0)


def test_graded_lex_order():
    np.testing.assert_array_equal(total_degree_exponents(2, 2), [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]])


def test_trig_one_dimensional_basis():
    s = trigonometric_space(1, 1)
    assert s.K == 3
    x = np.array([[0.1], [0.37]])
    expect = np.array([np.ones(2), np.cos(2 * np.pi * x[:, 0]), np.sin(2 * np.pi * x[:, 0])])
    np.testing.assert_allclose(s.evaluate(x), expect, atol=1e-15)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3))
def test_trig_dimension_by_enumeration(d, m):
    # nonzero frequencies with |alpha|_1 <= m, one per +-pair, two real functions each
    nonzero = [a for a in itertools.product(range(-m, m + 1), repeat=d) if 0 < sum(map(abs, a)) <= m]
    assert trigonometric_space(d, m).K == 1 + len(nonzero)


def test_trig_sizes():
    assert trigonometric_space(2, 0).K == 1
    assert trigonometric_space(2, 1).K == 5
    assert trigonometric_space(2, 2).K == 13


def test_trig_basis_independent_on_square():
    s = trigonometric_space(2, 1)
    c = make_cube([0, 0], 1)
    pairs = [lambda x: np.ones(len(x))]
    for i in range(s.K):
        for j in range(i, s.K):
            pairs.append(lambda x, i=i, j=j: s.evaluate(x)[i] * s.evaluate(x)[j])
    mv = qmc_moments(custom_space(pairs, 2, c), c, constant_weight(), 2**14)
    G = np.zeros((s.K, s.K))
    vals = iter(mv.values[1:])
    for i in range(s.K):
        for j in range(i, s.K):
            G[i, j] = G[j, i] = next(vals)
    assert np.linalg.matrix_rank(G, tol=1e-6) == s.K
    assert np.all(np.isreal(s.evaluate(np.zeros((1, 2)))))


def test_custom_space():
    assert custom_space([lambda x: 1.0, lambda x: np.linalg.norm(x, axis=1)], 2).K == 2
    assert custom_space([lambda x: np.ones(len(x)), lambda x: np.exp(x[:, 0])], 2).K == 2
    with pytest.raises(ValueError):
        custom_space([lambda x: 2.0, lambda x: x[:, 0]], 1)


def test_vandermonde_examples():
    V = vandermonde(algebraic_space(1, 1), [[-1], [0], [1]])
    np.testing.assert_array_equal(V, [[1, 1, 1], [-1, 0, 1]])
    np.testing.assert_allclose(vandermonde(algebraic_space(2, 1), [[1 / 3, -1 / 3]])[:, 0], [1, 1 / 3, -1 / 3])


@pytest.mark.parametrize("space", [algebraic_space(2, 3), trigonometric_space(2, 2), algebraic_space(3, 2)])
def test_single_node_column(space, rng):
    x = rng.uniform(-1, 1, size=(1, space.dimension))
    V = vandermonde(space, x)
    assert V.shape == (space.K, 1)
    np.testing.assert_array_equal(V[:, 0], space.evaluate(x)[:, 0])
    assert np.all(vandermonde(space, rng.uniform(-1, 1, (7, space.dimension)))[0] == 1.0)


def test_vandermonde_names_bad_node():
    s = custom_space([lambda x: 1.0, lambda x: 1.0 / x[:, 0]], 1, rng=3)
    with pytest.raises(ValueError, match="node 1"), np.errstate(divide="ignore"):
        vandermonde(s, [[1.0], [0.0]])


@pytest.mark.parametrize("m", range(6))
def test_unisolvent_on_sequences(m, square, disk):
    for dom in (square, disk):
        s = algebraic_space(2, m)
        x = PointSequence(dom).first(8 * s.K)
        assert np.linalg.matrix_rank(vandermonde(s, x)) == s.K


def test_descriptor_round_trip():
    for s in (algebraic_space(3, 2), trigonometric_space(2, 2)):
        t = space_from_descriptor(s.descriptor())
        x = np.random.default_rng(0).uniform(-1, 1, (5, s.dimension))
        np.testing.assert_array_equal(s.evaluate(x), t.evaluate(x))
