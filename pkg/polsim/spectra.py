"""Joint spectra — the initial two-photon frequency amplitude g(ω_a, ω_b)."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from numpy.typing import ArrayLike

from polsim.errors import DomainError, SeparationWarning, UnsupportedVariantError

Polarization = Literal["H", "V"]

# ΔΩ/δ below this lets the two peaks overlap enough that the closed forms drift.
MIN_SEPARATION_SIGMAS = 6.0


@dataclass(frozen=True)
class Medium:
    """Birefringent medium with constant indices for H and V polarization."""

    n_h: float
    n_v: float

    def __post_init__(self) -> None:
        if not (self.n_h > 0 and self.n_v > 0):
            raise DomainError(
                f"refractive indices must be positive, got n_h={self.n_h}, n_v={self.n_v}"
            )

    @property
    def delta_n(self) -> float:
        return self.n_v - self.n_h

    def index(self, pol: Polarization) -> float:
        if pol == "H":
            return self.n_h
        if pol == "V":
            return self.n_v
        raise DomainError(f"unknown polarization {pol!r}")


@dataclass(frozen=True)
class SinglePeak:
    """Bivariate Gaussian centred on (ω₀/2, ω₀/2)."""

    omega0: float
    delta: float
    k: float

    def __post_init__(self) -> None:
        _check_gaussian(self.omega0, self.delta, self.k)

    @property
    def centers(self) -> tuple[tuple[float, float], ...]:
        half = self.omega0 / 2.0
        return ((half, half),)


@dataclass(frozen=True)
class DoublePeak:
    """Two Gaussian peaks at (Ω₁, Ω₂) and (Ω₂, Ω₁) with Ω₁ + Ω₂ = ω₀.

    Ω₁ = Ω₂ is accepted so the single-peak reduction can be evaluated
    through the same closed forms; it still triggers a SeparationWarning.
    """

    omega1: float
    omega2: float
    delta: float
    k: float

    def __post_init__(self) -> None:
        if self.omega2 < self.omega1:
            raise DomainError(
                f"omega2 must not be below omega1, got {self.omega1} > {self.omega2}"
            )
        _check_gaussian(self.omega0, self.delta, self.k)
        if self.separation < MIN_SEPARATION_SIGMAS * self.delta:
            warnings.warn(
                f"peak separation {self.separation:.4g} rad/fs is below "
                f"{MIN_SEPARATION_SIGMAS:g} delta ({self.delta:.4g} rad/fs); "
                "closed forms assume well separated peaks",
                SeparationWarning,
                stacklevel=3,
            )

    @classmethod
    def around(cls, omega0: float, separation: float, delta: float, k: float) -> DoublePeak:
        """Build the peak pair symmetric about ω₀/2."""
        if separation < 0:
            raise DomainError(f"separation must be non-negative, got {separation}")
        half = omega0 / 2.0
        return cls(half - separation / 2.0, half + separation / 2.0, delta, k)

    @property
    def omega0(self) -> float:
        return self.omega1 + self.omega2

    @property
    def separation(self) -> float:
        return self.omega2 - self.omega1

    @property
    def centers(self) -> tuple[tuple[float, float], ...]:
        return ((self.omega1, self.omega2), (self.omega2, self.omega1))


@dataclass(frozen=True)
class DiscretePair:
    """The sharp color-entangled state (|ω₁ω₂⟩ + |ω₂ω₁⟩)/√2."""

    omega1: float
    omega2: float

    def __post_init__(self) -> None:
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise DomainError("discrete frequencies must be positive")
        if self.omega1 == self.omega2:
            raise DomainError("discrete pair needs omega1 != omega2")

    @property
    def omega0(self) -> float:
        return self.omega1 + self.omega2

    @property
    def separation(self) -> float:
        return abs(self.omega2 - self.omega1)

    @property
    def centers(self) -> tuple[tuple[float, float], ...]:
        return ((self.omega1, self.omega2), (self.omega2, self.omega1))


JointSpectrum = Union[SinglePeak, DoublePeak, DiscretePair]
GaussianSpectrum = Union[SinglePeak, DoublePeak]


def _check_gaussian(omega0: float, delta: float, k: float) -> None:
    if not omega0 > 0:
        raise DomainError(f"omega0 must be positive, got {omega0}")
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if not -1.0 <= k <= 1.0:
        raise DomainError(f"correlation coefficient must lie in [-1, 1], got {k}")


def covariance(delta: float, k: float) -> np.ndarray:
    """Covariance matrix [[δ², kδ²], [kδ², δ²]] of one Gaussian peak."""
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if not -1.0 <= k <= 1.0:
        raise DomainError(f"correlation coefficient must lie in [-1, 1], got {k}")
    d2 = delta * delta
    return np.array([[d2, k * d2], [k * d2, d2]])


def _log_peak_density(
    wa: np.ndarray, wb: np.ndarray, center: tuple[float, float], delta: float, k: float
) -> np.ndarray:
    da = wa - center[0]
    db = wb - center[1]
    one_minus_k2 = 1.0 - k * k
    quad = (da * da + db * db - 2.0 * k * (da * db)) / (delta * delta * one_minus_k2)
    return -0.5 * quad - math.log(2.0 * math.pi * delta * delta * math.sqrt(one_minus_k2))


def amplitude(
    spectrum: JointSpectrum,
    omega_a: ArrayLike,
    omega_b: ArrayLike,
    *,
    separated: bool = False,
) -> np.ndarray:
    """Evaluate the real, non-negative amplitude g (units fs), broadcasting over arrays.

    Normalized so that ∫∫|g|² = 1. For a DoublePeak the default is the exact
    form √((P₁+P₂)/2); `separated=True` selects (√P₁ + √P₂)/√2, whose norm is
    off by the peak-overlap cross term.
    """
    if isinstance(spectrum, DiscretePair):
        raise UnsupportedVariantError("DiscretePair has no continuous amplitude")
    if abs(spectrum.k) >= 1.0:
        raise UnsupportedVariantError(
            f"amplitude needs |k| < 1 (covariance is singular at k={spectrum.k})"
        )
    wa = np.asarray(omega_a, dtype=float)
    wb = np.asarray(omega_b, dtype=float)
    logs = [_log_peak_density(wa, wb, c, spectrum.delta, spectrum.k) for c in spectrum.centers]
    if len(logs) == 1:
        return np.exp(0.5 * logs[0])
    if separated:
        return (np.exp(0.5 * logs[0]) + np.exp(0.5 * logs[1])) / math.sqrt(2.0)
    return np.exp(0.5 * (np.logaddexp(logs[0], logs[1]) - math.log(2.0)))


def ridge_density(spectrum: GaussianSpectrum, omega_a: ArrayLike) -> np.ndarray:
    """Density of ω_a along the ridge ω_a + ω_b = ω₀ of a fully anticorrelated spectrum."""
    if isinstance(spectrum, DiscretePair):
        raise UnsupportedVariantError("DiscretePair has no continuous density")
    if spectrum.k != -1.0:
        raise UnsupportedVariantError(
            f"ridge density is defined for k = -1 only, got k={spectrum.k}"
        )
    wa = np.asarray(omega_a, dtype=float)
    norm = 1.0 / (spectrum.delta * math.sqrt(2.0 * math.pi))
    terms = [
        norm * np.exp(-0.5 * ((wa - c[0]) / spectrum.delta) ** 2) for c in spectrum.centers
    ]
    return sum(terms) / len(terms)


def characteristic_function(spectrum: JointSpectrum, t_a: float, t_b: float) -> complex:
    """E[exp(i(t_a ω_a + t_b ω_b))] under the joint density |g|².

    The DoublePeak density (P₁+P₂)/2 is a mixture, so averaging the two
    Gaussian characteristic functions is exact. Valid for |k| ≤ 1 and for
    the discrete pair.
    """
    values = []
    for ca, cb in spectrum.centers:
        phase = complex(math.cos(t_a * ca + t_b * cb), math.sin(t_a * ca + t_b * cb))
        if isinstance(spectrum, DiscretePair):
            values.append(phase)
            continue
        d2 = spectrum.delta * spectrum.delta
        spread = 0.5 * d2 * (t_a * t_a + 2.0 * spectrum.k * t_a * t_b + t_b * t_b)
        values.append(phase * math.exp(-spread))
    return sum(values) / len(values)
