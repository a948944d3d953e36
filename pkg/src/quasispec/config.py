"""Flat ``key = value`` experiment configuration.

Lines starting with ``#`` are comments; list values are comma separated.
Keys map one-to-one onto the CLI's long options (dashes or underscores).
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from typing import Optional

KNOWN_KEYS = {
    "alpha", "a", "mass", "beta", "alpha_shift", "n", "format", "out", "exact",
    "x", "flavor", "variant", "depth", "tail", "partner_a", "partner_mass", "samples",
    "tol", "figures", "table",
}


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    alpha: list = field(default_factory=lambda: ["1"])
    a: str = "0"
    mass: str = "gamma"
    beta: Optional[str] = None
    alpha_shift: Optional[str] = None
    n: int = 5
    format: str = "json"
    out: Optional[str] = None
    exact: bool = False
    x: list = field(default_factory=list)
    flavor: str = "geronimus"
    variant: str = "derived"
    depth: list = field(default_factory=lambda: [10, 50, 200])
    tail: str = "0"
    partner_a: str = "-1"
    partner_mass: str = "1"
    samples: int = 25
    tol: float = 1e-8
    figures: Optional[str] = None
    table: str = "all"

    def validate(self):
        if self.tol <= 0:
            raise ConfigError("tol must be positive")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, not {self.format!r}")
        if self.n < 0:
            raise ConfigError("n must be >= 0")
        return self


_LISTS = {"alpha", "x", "depth"}
_INTS = {"n", "samples"}


def _split(v: str) -> list:
    return [p.strip() for p in v.split(",") if p.strip()]


def _bool(v: str) -> bool:
    low = v.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {v!r}")


def coerce(key: str, value):
    """Convert a raw string to the field's type; non-strings pass through."""
    if not isinstance(value, str):
        return value
    try:
        if key in _LISTS:
            items = _split(value)
            return [int(i) for i in items] if key == "depth" else items
        if key in _INTS:
            return int(value)
        if key == "tol":
            return float(value)
        if key == "exact":
            return _bool(value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc
    return value


def parse_config_text(text: str) -> dict:
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                       delimiters=("=",), interpolation=None)
    try:
        parser.read_string("[cfg]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    out = {}
    for raw, value in parser.items("cfg"):
        key = raw.replace("-", "_")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key {raw!r}")
        out[key] = coerce(key, value)
    return out


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def resolve(overrides: dict, file_values: Optional[dict] = None) -> ExperimentConfig:
    """Defaults, then file values, then non-None overrides."""
    cfg = ExperimentConfig()
    names = {f.name for f in fields(cfg)}
    for source in (file_values or {}, overrides):
        for k, v in source.items():
            if k in names and v is not None:
                setattr(cfg, k, coerce(k, v))
    return cfg.validate()
