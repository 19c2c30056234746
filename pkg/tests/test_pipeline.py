import numpy as np
import pytest

from poscub import (
    algebraic_space,
    compute_moments,
    constant_weight,
    construct_positive_cf,
    make_ball,
    make_box,
    radial_power_weight,
    trigonometric_space,
)
from poscub.pipeline import moment_tolerance


@pytest.mark.parametrize("m", [0, 1, 2, 3, 5])
def test_disk(disk, m):
    s = algebraic_space(2, m)
    c = construct_positive_cf(disk, constant_weight(), s)
    r = c.rule
    assert r.N <= s.K
    assert np.all(r.weights > 0)
    assert np.all(disk.contains(r.nodes))
    assert r.metadata["residual"] <= moment_tolerance(c.moments)
    assert r.metadata["moment_provenance"] == "analytic"


def test_metadata(square):
    c = construct_positive_cf(square, constant_weight(), trigonometric_space(2, 1))
    meta = c.rule.metadata
    assert meta["space"] == {"kind": "trigonometric", "dimension": 2, "degree": 1, "K": 5}
    assert meta["sequence"] == "bisection"
    assert meta["steinitz_steps"] == len(c.reduction.steps)
    assert meta["ls_nodes"] == len(c.ls.nodes)
    assert meta["domain"]["type"] == "cube"


def test_qmc_provenance_recorded(disk_and_square):
    c = construct_positive_cf(disk_and_square, constant_weight(), algebraic_space(2, 1), moment_method="qmc", qmc_samples=2**16)
    assert c.rule.metadata["moment_provenance"] == "qmc"
    assert c.rule.metadata["qmc_samples"] == 2**16
    assert c.rule.metadata["qmc_error"] == c.moments.error_estimate


def test_given_moments_are_used(disk):
    s = algebraic_space(2, 1)
    mom = compute_moments(s, disk, constant_weight(), "qmc", 10**4)
    c = construct_positive_cf(disk, constant_weight(), s, moments=mom)
    assert c.moments is mom
    np.testing.assert_allclose(s.evaluate(c.rule.nodes) @ c.rule.weights, mom.values, atol=1e-12)


def test_anisotropic_box_with_halton():
    box = make_box([0, 10, -1], [1, 30, 1])
    s = algebraic_space(3, 2)
    c = construct_positive_cf(box, constant_weight(), s)
    assert c.rule.N <= s.K
    assert c.rule.metadata["sequence"] == "halton"
    assert c.rule.metadata["residual"] <= moment_tolerance(c.moments)


def test_off_center_ball_needs_qmc_for_radial_weight():
    b = make_ball([0.5, 0.0], 1.0)
    s = algebraic_space(2, 2)
    c = construct_positive_cf(b, radial_power_weight(1.0), s, qmc_samples=2**16)
    assert c.moments.provenance == "qmc"
    assert c.rule.N <= s.K and np.all(b.contains(c.rule.nodes))


def test_dimension_mismatch(square):
    with pytest.raises(ValueError):
        construct_positive_cf(square, constant_weight(), algebraic_space(3, 1))
