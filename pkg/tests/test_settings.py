import pytest

from errors import ConfigError
from settings import CAMPAIGNS, DEFAULT_BUDGET, EMITTABLE, RunConfig


def test_defaults() -> None:
    config = RunConfig()
    assert (config.n, config.m) == (3, 4)
    assert config.budget == DEFAULT_BUDGET
    assert config.to_dict()["variant"] == "standard"


@pytest.mark.parametrize("overrides", [
    {"n": 0},
    {"n": 3, "m": 5},
    {"m": 0},
    {"variant": "tilde"},
    {"format": "yaml"},
    {"truncation": 0},
    {"budget": 0},
    {"samples": 0},
])
def test_invalid_settings(overrides: dict) -> None:
    with pytest.raises(ConfigError):
        RunConfig(**overrides)


def test_from_dict_coerces_and_ignores_unknown_keys() -> None:
    config = RunConfig.from_dict({"n": "4", "m": "2", "seed": "7", "timing": 1, "colour": "red"})
    assert (config.n, config.m, config.seed) == (4, 2, 7)
    assert config.timing is True
    assert RunConfig.from_dict(config.to_dict()) == config
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"n": "three"})


def test_registry() -> None:
    assert "appendix-sl4" in CAMPAIGNS and "chain" in CAMPAIGNS
    assert all(CAMPAIGNS.values())
    assert "exponent-A" in EMITTABLE
