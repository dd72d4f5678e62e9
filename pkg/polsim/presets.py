"""The published figure parameter sets as ready-made sweeps."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Any

from polsim.config import SweepSpec
from polsim.errors import ConfigError

SEPARATION_NM = 3.0


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    curves: tuple[SweepSpec, ...]


def _double(label: str, k: float, fwhm: float) -> SweepSpec:
    return SweepSpec(
        model="double_peak", label=label, k=k, fwhm_nm=fwhm, separation_nm=SEPARATION_NM
    )


def _single(label: str, k: float, fwhm: float) -> SweepSpec:
    return SweepSpec(model="single_peak", label=label, k=k, fwhm_nm=fwhm)


def _build(name: str) -> Preset:
    if name == "fig3":
        return Preset(
            name,
            "double peak, k = -1, 3 nm separation, varying peak FWHM",
            tuple(_double(f"fwhm={f:g}nm", -1.0, f) for f in (0.125, 0.25, 0.5)),
        )
    if name == "fig4":
        return Preset(
            name,
            "double peak, FWHM 0.5 nm, 3 nm separation, varying correlation k",
            tuple(_double(f"k={k:g}", k, 0.5) for k in (-0.999, -0.99, -0.9)),
        )
    if name == "fig5":
        return Preset(
            name,
            "single peak, k = -1, varying FWHM",
            tuple(_single(f"fwhm={f:g}nm", -1.0, f) for f in (0.5, 1.0, 2.0)),
        )
    if name == "fig6":
        return Preset(
            name,
            "single peak, k = -0.999, varying FWHM",
            tuple(_single(f"fwhm={f:g}nm", -0.999, f) for f in (0.5, 1.0, 2.0)),
        )
    raise ConfigError("preset", f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


PRESET_NAMES = ("fig3", "fig4", "fig5", "fig6")


def get_preset(name: str, **overrides: Any) -> Preset:
    """Build a preset, optionally overriding SweepSpec fields on every curve."""
    preset = _build(name)
    if not overrides:
        return preset
    try:
        curves = tuple(dataclasses.replace(c, **overrides).validate() for c in preset.curves)
    except TypeError as exc:
        raise ConfigError("preset", f"bad override: {exc}") from None
    return Preset(preset.name, preset.description, curves)
