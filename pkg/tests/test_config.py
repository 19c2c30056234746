import math

import pytest

from poscub.config import ConfigError, domain_from_config, space_from_config, weight_from_config


def test_domains_round_trip_through_config(disk_and_square):
    doc = disk_and_square.to_config()
    again = domain_from_config(doc)
    assert again.volume == pytest.approx(math.pi + 1)
    assert again.contains([1.6, 1.6]) and not again.contains([0.9, 0.9])


def test_domain_kinds():
    assert domain_from_config({"type": "box", "lo": [0, 0], "hi": [1, 2]}).volume == 2
    assert domain_from_config({"type": "ball", "center": [0, 0, 0], "radius": 1}).dimension == 3
    inter = domain_from_config(
        {
            "type": "intersection",
            "parts": [{"type": "cube", "center": [0, 0], "radius": 1}, {"type": "ball", "center": [1, 1], "radius": 1}],
        }
    )
    assert inter.contains([0.5, 0.5]) and not inter.contains([-0.5, -0.5])


@pytest.mark.parametrize(
    "doc",
    [
        {"type": "blob"},
        {"type": "cube", "center": [0, 0]},
        {"type": "union", "parts": [{"type": "cube", "center": [0], "radius": 1}]},
        {"type": "difference", "parts": [{"type": "cube", "center": [0], "radius": 1}] * 3},
        {"type": "cube", "center": [0, 0], "radius": "wide"},
    ],
)
def test_bad_domains(doc):
    with pytest.raises(ConfigError):
        domain_from_config(doc)


def test_weights():
    assert weight_from_config(None).is_constant_one
    assert weight_from_config("one").is_constant_one
    assert weight_from_config({"type": "sqrt_norm"}).radial_power == 0.5
    assert weight_from_config({"type": "radial_power", "power": 2}).radial_power == 2
    with pytest.raises(ConfigError):
        weight_from_config({"type": "radial_power"})
    with pytest.raises(ConfigError):
        weight_from_config({"type": "gaussian"})


def test_spaces():
    assert space_from_config("algebraic", 3, 2).K == 10
    assert space_from_config("trigonometric", 2, 1).K == 5
    with pytest.raises(ConfigError):
        space_from_config("wavelet", 2, 1)
    with pytest.raises(ConfigError):
        space_from_config("algebraic", 2, -1)
