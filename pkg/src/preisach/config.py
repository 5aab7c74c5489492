"""Flat key=value run configuration shared by all CLI subcommands.

A config is a plain-text file of ``key = value`` lines (``#`` comments,
blank lines ignored) over a fixed dotted-key vocabulary; every key has a
default, and command-line ``--set key=value`` overrides win over the file.
Unknown keys and malformed values fail fast with the offending key named.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .density import (Density, ExponentialDecay, GaussComponent, GaussianMixture,
                      PlaneBounds, QuadratureConfig, Uniform)
from .memory import MemoryVector, ground_state, saturation_state
from .signals import InputSequence, load_csv, major_loop_sine, multisine
from .sspm import SamplingConfig

__all__ = ["ConfigError", "Config", "DEFAULTS", "load_config"]


class ConfigError(ValueError):
    """Bad key, bad value, or an unusable combination."""


DEFAULTS: dict[str, str] = {
    "model": "sspm",                    # sspm | cspm | both
    "pdf.type": "uniform",              # uniform | exp | gauss
    "pdf.v": "1.0",
    "pdf.A": "1.0",
    "pdf.B": "2.0",
    "pdf.C": "0.1",
    "pdf.w1": "0.5",
    "pdf.mu1.alpha": "0.45",
    "pdf.mu1.beta": "-0.45",
    "pdf.sigma1.aa": "0.12",
    "pdf.sigma1.ab": "0.0",
    "pdf.sigma1.bb": "0.12",
    "pdf.w2": "0.25",
    "pdf.mu2.alpha": "0.6",
    "pdf.mu2.beta": "0.0",
    "pdf.sigma2.aa": "0.10",
    "pdf.sigma2.ab": "0.02",
    "pdf.sigma2.bb": "0.08",
    "pdf.w3": "0.25",
    "pdf.mu3.alpha": "0.0",
    "pdf.mu3.beta": "-0.6",
    "pdf.sigma3.aa": "0.08",
    "pdf.sigma3.ab": "0.02",
    "pdf.sigma3.bb": "0.10",
    "bounds.min": "-1.0",
    "bounds.max": "1.0",
    "signal.type": "major_loop",        # major_loop | multisine | csv
    "signal.amplitude": "1.0",
    "signal.periods": "1",
    "signal.frequency": "1.0",
    "signal.band_lo": "0.1",
    "signal.band_hi": "10.0",
    "signal.tones": "20",
    "signal.peak": "1.0",
    "signal.bias": "0.0",
    "signal.duration": "10.0",
    "signal.seed": "0",
    "signal.path": "",
    "sampling.rate": "1000.0",
    "quadrature.tol": "1e-5",
    "quadrature.max_depth": "50",
    "init.type": "saturation_neg",      # saturation_neg | saturation_pos | ground
    "init.k": "64",
    "sspm.substep": "none",             # none or a positive move size
    "sspm.reanchor": "false",
    "sspm.unscaled": "false",
    "oracle.n": "2000",
    "oracle.init": "negative",          # negative | demag
    "oracle.threshold_pct": "0.5",
    "bench.repeats": "20",
    "bench.tols": "1e-3,1e-4,1e-5",
    "study.master_rate": "10000.0",
    "study.factors": "2,10",
    "output.path": "",
}


def _parse_line(line: str, where: str) -> tuple[str, str] | None:
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    if "=" not in body:
        raise ConfigError(f"{where}: expected 'key = value', got {line.strip()!r}")
    key, value = body.split("=", 1)
    return key.strip(), value.strip()


@dataclass
class Config:
    """Validated key/value store with typed accessors."""

    values: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        merged = dict(DEFAULTS)
        for key, value in self.values.items():
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            merged[key] = value
        self.values = merged

    def raw(self, key: str) -> str:
        if key not in self.values:
            raise ConfigError(f"unknown config key {key!r}")
        return self.values[key]

    def get_float(self, key: str) -> float:
        raw = self.raw(key)
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {raw!r}") from None

    def get_int(self, key: str) -> int:
        raw = self.raw(key)
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None

    def get_bool(self, key: str) -> bool:
        raw = self.raw(key).lower()
        if raw in ("true", "yes", "1", "on"):
            return True
        if raw in ("false", "no", "0", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {self.raw(key)!r}")

    def get_choice(self, key: str, choices: tuple[str, ...]) -> str:
        raw = self.raw(key)
        if raw not in choices:
            raise ConfigError(f"{key}: expected one of {', '.join(choices)}, got {raw!r}")
        return raw

    def get_floats(self, key: str) -> tuple[float, ...]:
        raw = self.raw(key)
        try:
            return tuple(float(part) for part in raw.split(",") if part.strip())
        except ValueError:
            raise ConfigError(f"{key}: expected comma-separated numbers, got {raw!r}") from None

    def get_ints(self, key: str) -> tuple[int, ...]:
        raw = self.raw(key)
        try:
            return tuple(int(part) for part in raw.split(",") if part.strip())
        except ValueError:
            raise ConfigError(f"{key}: expected comma-separated integers, got {raw!r}") from None

    # --- builders ---

    def bounds(self) -> PlaneBounds:
        try:
            return PlaneBounds(self.get_float("bounds.min"), self.get_float("bounds.max"))
        except ValueError as exc:
            raise ConfigError(f"bounds.min/bounds.max: {exc}") from None

    def quadrature(self) -> QuadratureConfig:
        try:
            return QuadratureConfig(self.get_float("quadrature.tol"),
                                    self.get_int("quadrature.max_depth"))
        except ValueError as exc:
            raise ConfigError(f"quadrature.tol/quadrature.max_depth: {exc}") from None

    def pdf(self) -> Density:
        kind = self.get_choice("pdf.type", ("uniform", "exp", "gauss"))
        try:
            if kind == "uniform":
                return Uniform(self.get_float("pdf.v"))
            if kind == "exp":
                return ExponentialDecay(self.get_float("pdf.A"), self.get_float("pdf.B"),
                                        self.get_float("pdf.C"))
            comps = []
            for i in (1, 2, 3):
                w = self.raw(f"pdf.w{i}")
                if not w or float(w) == 0.0:
                    continue
                comps.append(GaussComponent(
                    float(w),
                    (self.get_float(f"pdf.mu{i}.alpha"), self.get_float(f"pdf.mu{i}.beta")),
                    ((self.get_float(f"pdf.sigma{i}.aa"), self.get_float(f"pdf.sigma{i}.ab")),
                     (self.get_float(f"pdf.sigma{i}.ab"), self.get_float(f"pdf.sigma{i}.bb"))),
                ))
            return GaussianMixture(tuple(comps))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"pdf.*: {exc}") from None

    def sampling(self) -> SamplingConfig:
        substep_raw = self.raw("sspm.substep").lower()
        substep = None if substep_raw in ("", "none") else self.get_float("sspm.substep")
        try:
            return SamplingConfig(self.get_float("sampling.rate"), substep)
        except ValueError as exc:
            raise ConfigError(f"sampling.rate/sspm.substep: {exc}") from None

    def initial_memory(self, bounds: PlaneBounds) -> MemoryVector:
        kind = self.get_choice("init.type", ("saturation_neg", "saturation_pos", "ground"))
        try:
            if kind == "saturation_neg":
                return saturation_state(bounds, -1)
            if kind == "saturation_pos":
                return saturation_state(bounds, +1)
            return ground_state(bounds, self.get_int("init.k"))
        except ValueError as exc:
            raise ConfigError(f"init.*: {exc}") from None

    def signal(self) -> InputSequence:
        kind = self.get_choice("signal.type", ("major_loop", "multisine", "csv"))
        rate = self.get_float("sampling.rate")
        try:
            if kind == "major_loop":
                return major_loop_sine(self.get_float("signal.amplitude"), rate,
                                       self.get_int("signal.periods"),
                                       self.get_float("signal.frequency"))
            if kind == "multisine":
                return multisine((self.get_float("signal.band_lo"), self.get_float("signal.band_hi")),
                                 self.get_int("signal.tones"), self.get_float("signal.peak"),
                                 self.get_float("signal.bias"), self.get_float("signal.duration"),
                                 rate, self.get_int("signal.seed"))
            path = self.raw("signal.path")
            if not path:
                raise ConfigError("signal.path: required when signal.type = csv")
            return load_csv(path, None)
        except ConfigError:
            raise
        except (ValueError, OSError) as exc:
            raise ConfigError(f"signal.*: {exc}") from None


def load_config(path: str | None, overrides: list[str] | None = None) -> Config:
    """Config from an optional file plus ``key=value`` override strings."""
    values: dict[str, str] = {}
    if path:
        try:
            with open(path) as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        for i, line in enumerate(lines, start=1):
            parsed = _parse_line(line, f"{path}:{i}")
            if parsed:
                values[parsed[0]] = parsed[1]
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        values[key.strip()] = value.strip()
    return Config(values)
