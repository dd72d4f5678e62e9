"""Flat `key = value` sweep configuration parsed into a SweepSpec."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from polsim.errors import ConfigError
from polsim.spectra import DiscretePair, DoublePeak, JointSpectrum, Medium, SinglePeak
from polsim.units import UnitContext, fwhm_nm_to_sigma, wavelength_span_to_angular

MODELS = ("single_peak", "double_peak", "discrete")
CRITICAL = ("tau_c", "tau_d")

LAMBDA_PUMP_NM = 780.0
N_H = 1.51004
N_V = 1.54360

DEFAULT_X_MAX = {"single_peak": 2000.0, "double_peak": 400.0, "discrete": 400.0}
DEFAULT_X_STEPS = 801


@dataclass(frozen=True)
class SweepSpec:
    """One concurrence-vs-path-difference curve."""

    model: str
    label: str = ""
    lambda_pump_nm: float = LAMBDA_PUMP_NM
    conversion_lambda_nm: Optional[float] = None
    n_h: float = N_H
    n_v: float = N_V
    k: float = -1.0
    fwhm_nm: float = 0.5
    separation_nm: Optional[float] = None
    x_min: float = 0.0
    x_max: Optional[float] = None
    x_steps: int = DEFAULT_X_STEPS
    emit_elements: bool = False
    workers: int = 4
    taus_fs: tuple[float, ...] = ()
    critical: Optional[str] = None
    m: tuple[int, ...] = ()

    @property
    def x_end(self) -> float:
        if self.x_max is not None:
            return self.x_max
        return DEFAULT_X_MAX.get(self.model, 400.0)

    def validate(self) -> SweepSpec:
        if self.model not in MODELS:
            raise ConfigError("model", f"expected one of {', '.join(MODELS)}, got {self.model!r}")
        for key in ("lambda_pump_nm", "n_h", "n_v"):
            if not getattr(self, key) > 0:
                raise ConfigError(key, "must be positive")
        if self.conversion_lambda_nm is not None and not self.conversion_lambda_nm > 0:
            raise ConfigError("conversion_lambda_nm", "must be positive")
        if not self.n_v > self.n_h:
            raise ConfigError("n_v", "must exceed n_h (the medium must be birefringent)")
        if self.model != "discrete":
            if not -1.0 <= self.k <= 1.0:
                raise ConfigError("k", f"must lie in [-1, 1], got {self.k}")
            if not self.fwhm_nm > 0:
                raise ConfigError("fwhm_nm", "must be positive")
        if self.model in ("double_peak", "discrete"):
            if self.separation_nm is None:
                raise ConfigError("separation_nm", f"required for model {self.model}")
            if not self.separation_nm > 0:
                raise ConfigError("separation_nm", "must be positive")
        if not (math.isfinite(self.x_min) and self.x_min >= 0):
            raise ConfigError("x_min", "must be non-negative")
        if not self.x_end > self.x_min:
            raise ConfigError("x_max", "must exceed x_min")
        if self.x_steps < 2:
            raise ConfigError("x_steps", "need at least 2 grid points")
        if self.workers < 1:
            raise ConfigError("workers", "need at least 1 worker")
        if any(t < 0 for t in self.taus_fs):
            raise ConfigError("taus_fs", "interaction times must be non-negative")
        if self.critical is not None and self.critical not in CRITICAL:
            raise ConfigError("critical", f"expected tau_c or tau_d, got {self.critical!r}")
        if any(m < 0 for m in self.m):
            raise ConfigError("m", "orders must be non-negative")
        if self.m and self.critical is None:
            raise ConfigError("m", "needs critical = tau_c or tau_d")
        return self

    def units(self) -> UnitContext:
        return UnitContext(self.lambda_pump_nm, self.conversion_lambda_nm)

    def medium(self) -> Medium:
        return Medium(self.n_h, self.n_v)

    def spectrum(self) -> JointSpectrum:
        ctx = self.units()
        omega0 = ctx.omega0
        if self.model == "single_peak":
            delta = fwhm_nm_to_sigma(self.fwhm_nm, ctx.conversion_wavelength)
            return SinglePeak(omega0, delta, self.k)
        assert self.separation_nm is not None
        separation = wavelength_span_to_angular(self.separation_nm, ctx.conversion_wavelength)
        if self.model == "discrete":
            return DiscretePair(omega0 / 2 - separation / 2, omega0 / 2 + separation / 2)
        delta = fwhm_nm_to_sigma(self.fwhm_nm, ctx.conversion_wavelength)
        return DoublePeak.around(omega0, separation, delta, self.k)

    def x_grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_end, self.x_steps)


def _parse_bool(raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("true", "yes", "1"):
        return True
    if value in ("false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _optional_float(raw: str) -> Optional[float]:
    return None if raw.strip().lower() in ("", "none") else float(raw)


def _float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(v) for v in raw.split(",") if v.strip())


def _int_list(raw: str) -> tuple[int, ...]:
    return tuple(int(v) for v in raw.split(",") if v.strip())


_PARSERS: dict[str, Callable[[str], object]] = {
    "model": str.strip,
    "label": str.strip,
    "lambda_pump_nm": float,
    "conversion_lambda_nm": _optional_float,
    "n_h": float,
    "n_v": float,
    "k": float,
    "fwhm_nm": float,
    "separation_nm": _optional_float,
    "x_min": float,
    "x_max": _optional_float,
    "x_steps": int,
    "emit_elements": _parse_bool,
    "workers": int,
    "taus_fs": _float_list,
    "critical": lambda raw: raw.strip() or None,
    "m": _int_list,
}


def parse_config(text: str) -> SweepSpec:
    """Parse a flat config; unknown, duplicate or malformed keys raise ConfigError."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError(key, "unknown key")
        if key in values:
            raise ConfigError(key, "duplicate key")
        try:
            values[key] = _PARSERS[key](raw)
        except ValueError as exc:
            raise ConfigError(key, f"bad value {raw!r} ({exc})") from None
    if "model" not in values:
        raise ConfigError("model", "missing required key")
    return SweepSpec(**values).validate()  # type: ignore[arg-type]


def load_config(path: str | Path) -> SweepSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_config(text)
