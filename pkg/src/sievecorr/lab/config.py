"""Sweep configuration: validation, flat ``key = value`` files and overrides."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..coeff import PRESETS
from ..errors import ConfigError

LAB_PRESETS = PRESETS + ("zero",)


def floor_power(N: int, x: float) -> int:
    """``[N^x]``, nudged so exact integer powers are not lost to rounding."""
    return math.floor(N**x * (1 + 1e-12))


@dataclass(frozen=True)
class SweepConfig:
    N_list: tuple[int, ...]
    theta: float
    lambda1: float
    lambda2: float
    delta: float = 0.01
    preset1: str = "moebius"
    preset2: str = "moebius"
    seed: int = 0
    output_path: str = "sweep"

    def __post_init__(self):
        if not self.N_list:
            raise ConfigError("N_list is empty")
        if not 0 < self.theta < 0.5:
            raise ConfigError(f"theta must lie in (0, 1/2), got {self.theta}")
        if not 0 < self.lambda1 <= self.lambda2 < 1:
            raise ConfigError(
                f"need 0 < lambda1 <= lambda2 < 1, got {self.lambda1}, {self.lambda2}"
            )
        if not 0 < self.delta < 0.5:
            raise ConfigError(f"delta must lie in (0, 1/2), got {self.delta}")
        for p in (self.preset1, self.preset2):
            if p not in LAB_PRESETS:
                raise ConfigError(f"unknown preset {p!r}; choose from {LAB_PRESETS}")
        for N in self.N_list:
            if N < 2:
                raise ConfigError(f"N must be >= 2, got {N}")
            h = self.width(N)
            # shifts up to 2h enter the reconstructions and must stay below N
            if h < 1 or 2 * h >= N:
                raise ConfigError(f"N={N} gives h={h}, need 1 <= h < N/2")

    def width(self, N: int) -> int:
        return floor_power(N, self.theta)

    def levels(self, N: int) -> tuple[int, int]:
        return max(1, floor_power(N, self.lambda1)), max(1, floor_power(N, self.lambda2))


_FIELDS = [f.name for f in dataclasses.fields(SweepConfig)]


def _convert(key: str, value: Any) -> Any:
    try:
        if key == "N_list":
            if isinstance(value, str):
                value = [v for v in value.replace(",", " ").split() if v]
            return tuple(int(v) for v in value)
        if key in ("theta", "lambda1", "lambda2", "delta"):
            return float(value)
        if key == "seed":
            return int(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {value!r}") from exc


def parse_config_text(text: str) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _convert(key, value)
    return values


def build_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> SweepConfig:
    """Read the file (if any), apply non-``None`` overrides, validate."""
    values: dict[str, Any] = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        values.update(parse_config_text(text))
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _FIELDS:
            raise ConfigError(f"unknown key {key!r}")
        values[key] = _convert(key, value)
    missing = [k for k in ("N_list", "theta", "lambda1", "lambda2") if k not in values]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    return SweepConfig(**values)


def config_text(cfg: SweepConfig) -> str:
    lines = []
    for key in _FIELDS:
        v = getattr(cfg, key)
        lines.append(f"{key} = {','.join(map(str, v)) if key == 'N_list' else v}")
    return "\n".join(lines) + "\n"
