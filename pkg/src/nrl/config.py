"""Run configuration: key = value file, environment fallback, flag overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .checks import Precision
from .primes import DEFAULT_CEILING, DEFAULT_SEGMENT
from .arith import FACTOR_CEILING, RANGE_CEILING
from .store import FORMATS
from .runner import ROW_POLICIES

OUT_ENV = "NRL_OUT_DIR"


class ConfigError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"config field {field!r}: {message}")
        self.field = field


@dataclass(frozen=True)
class GridSpec:
    lo: int
    hi: int
    kind: str = "geometric"
    per_decade: int = 8

    @classmethod
    def parse(cls, text: str, field: str = "grid") -> "GridSpec":
        """'lo:hi[:geometric[:per_decade]]' with lo, hi like 1e4 or 10000."""
        parts = text.split(":")
        if len(parts) < 2 or len(parts) > 4:
            raise ConfigError(field, f"expected lo:hi[:geometric[:per_decade]], got {text!r}")
        try:
            lo, hi = (int(float(x)) for x in parts[:2])
            per = int(parts[3]) if len(parts) == 4 else 8
        except ValueError:
            raise ConfigError(field, f"non-numeric bound in {text!r}") from None
        kind = parts[2] if len(parts) >= 3 else "geometric"
        if kind != "geometric":
            raise ConfigError(field, f"only geometric grids are supported, got {kind!r}")
        if not 1 <= lo <= hi:
            raise ConfigError(field, f"need 1 <= lo <= hi, got {lo}..{hi}")
        if per < 1:
            raise ConfigError(field, "per_decade must be >= 1")
        return cls(lo, hi, kind, per)

    def points(self) -> list[int]:
        from .constants import geometric_grid
        return geometric_grid(self.lo, self.hi, self.per_decade)

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}:{self.kind}:{self.per_decade}"


@dataclass(frozen=True)
class RunConfig:
    precision: str = Precision.GUARDED.value
    prime_ceiling: int = DEFAULT_CEILING
    factor_ceiling: int = FACTOR_CEILING
    range_ceiling: int = RANGE_CEILING
    segment_size: int = DEFAULT_SEGMENT
    a_max: int = 2
    j_max: int = 4
    eta_1: float = 0.5
    eta_2: float = 3.965
    eta_3: float = 20.83
    fit_grid: str = "100:1e6:geometric:8"
    probe_grid: str = "1:1e6:geometric:8"
    out_dir: str = "nrl_out"
    checkpoint_every: int = 10**6
    checkpoint_seconds: float = 30.0
    workers: int = 0  # 0: one per CPU
    rows: str = "all"
    format: str = "csv"
    timestamps: bool = True

    def validate(self) -> "RunConfig":
        try:
            Precision(self.precision)
        except ValueError:
            raise ConfigError("precision", f"expected one of "
                              f"{[p.value for p in Precision]}, got {self.precision!r}") from None
        for name in ("prime_ceiling", "factor_ceiling", "range_ceiling", "segment_size",
                     "checkpoint_every"):
            if getattr(self, name) < 1:
                raise ConfigError(name, "must be a positive integer")
        if self.a_max != 2:
            raise ConfigError("a_max", "only truncation modulo 1/m^2 is supported (a_max = 2)")
        if not 1 <= self.j_max <= 4:
            raise ConfigError("j_max", "must lie in 1..4")
        for name in ("eta_1", "eta_2", "eta_3"):
            if not getattr(self, name) > 0:
                raise ConfigError(name, "must be positive")
        GridSpec.parse(self.fit_grid, "fit_grid")
        GridSpec.parse(self.probe_grid, "probe_grid")
        if self.checkpoint_seconds <= 0:
            raise ConfigError("checkpoint_seconds", "must be positive")
        if self.workers < 0:
            raise ConfigError("workers", "must be >= 0")
        if self.rows not in ROW_POLICIES:
            raise ConfigError("rows", f"expected one of {ROW_POLICIES}")
        if self.format not in FORMATS:
            raise ConfigError("format", f"expected one of {FORMATS}")
        return self

    @property
    def eta(self) -> dict[int, float]:
        return {1: self.eta_1, 2: self.eta_2, 3: self.eta_3}

    @property
    def worker_count(self) -> int:
        return self.workers or (os.cpu_count() or 1)

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


_FIELDS = {f.name: f for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    typ = _FIELDS[name].type
    try:
        if typ == "int":
            return int(float(raw)) if "e" in raw.lower() else int(raw)
        if typ == "float":
            return float(raw)
        if typ == "bool":
            if raw.lower() in ("1", "true", "yes", "on"):
                return True
            if raw.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError
    except ValueError:
        raise ConfigError(name, f"cannot parse {raw!r} as {typ}") from None
    return raw


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise ConfigError(key or f"line {lineno}", "expected key = value")
        if key not in _FIELDS:
            raise ConfigError(key, "unknown field")
        out[key] = _coerce(key, value.strip())
    return out


def load_config(path: str | Path | None = None, **overrides) -> RunConfig:
    """Defaults, then NRL_OUT_DIR, then the file, then non-None overrides."""
    base = {}
    if os.environ.get(OUT_ENV):
        base["out_dir"] = os.environ[OUT_ENV]
    if path is not None:
        try:
            base.update(parse_config_text(Path(path).read_text()))
        except OSError as e:
            raise ConfigError("config", f"cannot read {path}: {e.strerror}") from None
    cfg = RunConfig(**base).with_overrides(**overrides)
    return cfg.validate()
