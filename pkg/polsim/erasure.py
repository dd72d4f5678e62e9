"""Erasure — the upconversion pump overlap kernel E and its wide-pump limit."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from polsim.errors import DomainError


@dataclass(frozen=True)
class Pump:
    """Gaussian upconversion pump: mean ν₀ and standard deviation σ (rad/fs).

    ν₀ never enters the kernel; it is kept so a pump can be described as in
    the laboratory.
    """

    sigma: float
    nu0: float = 0.0

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise DomainError(f"pump sigma must be positive, got {self.sigma}")

    @property
    def wide_limit(self) -> float:
        """Constant value 1/(4πσ²) the kernel approaches for σ ≫ detuning."""
        return 1.0 / (4.0 * math.pi * self.sigma**2)


def kernel_factor(d_omega: ArrayLike, pump: Pump) -> np.ndarray:
    """One arm's factor exp[-Δω²/4σ²]/(2σ√π), a normalized Gaussian of variance 2σ²."""
    d = np.asarray(d_omega, dtype=float)
    s = pump.sigma
    return np.exp(-(d * d) / (4.0 * s * s)) / (2.0 * s * math.sqrt(math.pi))


def kernel_E(d_omega_a: ArrayLike, d_omega_b: ArrayLike, pump: Pump) -> np.ndarray | float:
    """Pump overlap weight E for frequency offsets (ω_a − ω_a', ω_b − ω_b')."""
    value = kernel_factor(d_omega_a, pump) * kernel_factor(d_omega_b, pump)
    if np.ndim(value) == 0:
        return float(value)
    return value


def wide_pump_ratio(max_detuning: float, pump: Pump) -> float:
    """E at the largest detuning relative to its peak; near 1 certifies the wide-pump regime."""
    if max_detuning < 0:
        raise DomainError(f"max_detuning must be non-negative, got {max_detuning}")
    return float(kernel_E(max_detuning, max_detuning, pump)) / pump.wide_limit
