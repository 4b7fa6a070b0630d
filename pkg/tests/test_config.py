import pytest

from gatepulse.config import (
    ENV_CONFIG,
    ConfigError,
    RunConfig,
    apply_overrides,
    load_config,
    parse_config_text,
)


def test_defaults():
    cfg = RunConfig()
    assert cfg.model == "ideal2"
    assert cfg.J == 21.0
    assert cfg.M == 256
    assert cfg.resolution == 0.05
    assert cfg.rise_ns == 4.0
    assert cfg.stages == ((50, 100), (10, 500), (2, 1000))
    assert cfg.units == "1/J"


def test_effective_threshold_defaults():
    assert RunConfig(model="ideal2").effective_threshold() == 1 - 1e-5
    assert RunConfig(model="real3").effective_threshold() == 1 - 1e-3
    assert RunConfig(model="real2", threshold=0.5).effective_threshold() == 0.5


def test_duration_units():
    cfg = RunConfig(J=21.0, units="ns")
    # 100 ns at J = 21 MHz is 2.1/J
    assert cfg.duration_in_J(100.0) == pytest.approx(2.1)
    assert RunConfig(units="1/J").duration_in_J(0.8) == 0.8


def test_parse_config_text():
    cfg = parse_config_text(
        """
        # a comment
        model = real2
        gate = cnot12
        T = 0.9   # trailing comment
        M = 128
        bounds = off
        stages = 8x50,2x200
        """
    )
    assert cfg.model == "real2"
    assert cfg.gate == "cnot12"
    assert cfg.T == 0.9
    assert cfg.M == 128
    assert cfg.bounds is False
    assert cfg.stages == ((8, 50), (2, 200))


def test_parse_errors_name_the_key():
    with pytest.raises(ConfigError) as e:
        parse_config_text("frobnicate = 3")
    assert e.value.key == "frobnicate"
    with pytest.raises(ConfigError) as e:
        parse_config_text("M = lots")
    assert e.value.key == "M"
    with pytest.raises(ConfigError):
        parse_config_text("just some words")


def test_load_config_env(tmp_path, monkeypatch):
    p = tmp_path / "run.cfg"
    p.write_text("gate = swap12\nseed = 9\n")
    monkeypatch.setenv(ENV_CONFIG, str(p))
    cfg = load_config()
    assert cfg.gate == "swap12"
    assert cfg.seed == 9
    monkeypatch.delenv(ENV_CONFIG)
    assert load_config().gate == ""


def test_apply_overrides():
    cfg = RunConfig()
    apply_overrides(cfg, [("gate", "cnot13"), ("T", "1.4"), ("M", None),
                          ("bounds", False)])
    assert cfg.gate == "cnot13"
    assert cfg.T == 1.4
    assert cfg.M == 256  # None means not overridden
    assert cfg.bounds is False
    with pytest.raises(ConfigError):
        apply_overrides(cfg, [("nope", "1")])
