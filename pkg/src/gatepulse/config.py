"""Flat key-value run configuration with paper-matched defaults.

Config files contain one `key = value` per line; `#` starts a comment.
CLI flags override file values, which override the defaults below.
"""

import os
from dataclasses import dataclass, field

from .models import DEFAULT_J, DELTA_MAX, OMEGA_MAX
from .search import DEFAULT_STAGES

ENV_CONFIG = "GATEPULSE_CONFIG"

DEFAULT_THRESHOLDS = {"ideal2": 1 - 1e-5, "ideal3": 1 - 1e-5,
                      "real2": 1 - 1e-3, "real3": 1 - 1e-3}


@dataclass
class RunConfig:
    model: str = "ideal2"
    J: float = DEFAULT_J
    gate: str = ""
    T: float | None = None
    T_min: float | None = None
    T_max: float | None = None
    resolution: float = 0.05
    M: int = 256
    threshold: float | None = None  # default depends on model kind
    bounds: bool = True
    delta_max: float = DELTA_MAX
    omega_max: float = OMEGA_MAX
    rise_ns: float = 4.0
    stages: tuple = DEFAULT_STAGES
    seed: int = 0
    init_scale: float = 0.2
    units: str = "1/J"  # or "ns"
    jobs: int = 0  # 0 = available parallelism
    out: str = "run"
    mode: str = "exact"
    budget_scale: int = 1

    def effective_threshold(self):
        if self.threshold is not None:
            return self.threshold
        return DEFAULT_THRESHOLDS.get(self.model, 1 - 1e-5)

    def duration_in_J(self, value):
        """Convert a duration from the configured unit to 1/J."""
        if self.units == "ns":
            return value * self.J / 1000.0
        return value

    def is_realistic(self):
        return self.model.startswith("real")


class ConfigError(ValueError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"config key {key!r}: {message}")


_BOOL = {"true": True, "1": True, "on": True, "yes": True,
         "false": False, "0": False, "off": False, "no": False}


def _parse_stages(text):
    stages = []
    for part in text.split(","):
        pop, _, iters = part.strip().partition("x")
        stages.append((int(pop), int(iters)))
    return tuple(stages)


_PARSERS = {
    "model": str, "gate": str, "units": str, "out": str, "mode": str,
    "J": float, "T": float, "T_min": float, "T_max": float,
    "resolution": float, "threshold": float, "rise_ns": float,
    "delta_max": float, "omega_max": float, "init_scale": float,
    "M": int, "seed": int, "jobs": int, "budget_scale": int,
    "bounds": lambda s: _BOOL[s.lower()],
    "stages": _parse_stages,
}


def parse_config_text(text, base=None):
    cfg = base or RunConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, _, value = (p.strip() for p in line.partition("="))
        if key not in _PARSERS:
            raise ConfigError(key, "unknown key")
        try:
            setattr(cfg, key, _PARSERS[key](value))
        except (ValueError, KeyError) as exc:
            raise ConfigError(key, f"cannot parse value {value!r}") from exc
    return cfg


def load_config(path=None):
    cfg = RunConfig()
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if path:
        with open(path) as fh:
            cfg = parse_config_text(fh.read(), cfg)
    return cfg


def apply_overrides(cfg, pairs):
    """Apply key=value overrides (from CLI flags) onto a config."""
    for key, value in pairs:
        if value is None:
            continue
        if key not in _PARSERS:
            raise ConfigError(key, "unknown key")
        setattr(cfg, key, _PARSERS[key](value) if isinstance(value, str) else value)
    return cfg
