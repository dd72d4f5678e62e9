"""Laboratory units (nm, FWHM) to the internal rad/fs and fs representation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from polsim.errors import DomainError
from polsim.spectra import Medium

SPEED_OF_LIGHT = 299.792458  # nm/fs
FWHM_PER_SIGMA = 2.0 * math.sqrt(2.0 * math.log(2.0))


@dataclass(frozen=True)
class UnitContext:
    """Wavelength scales of one experiment.

    `lambda_pump` is the SPDC pump wavelength λ₀; the photons sit at
    λ_photon = 2λ₀. Spectral widths and separations given in nm are
    converted at `conversion_lambda`, which defaults to λ_photon.
    """

    lambda_pump: float  # nm
    conversion_lambda: Optional[float] = None  # nm

    def __post_init__(self) -> None:
        if not self.lambda_pump > 0:
            raise DomainError(f"lambda_pump must be positive, got {self.lambda_pump}")
        if self.conversion_lambda is not None and not self.conversion_lambda > 0:
            raise DomainError(
                f"conversion_lambda must be positive, got {self.conversion_lambda}"
            )

    @property
    def c(self) -> float:
        return SPEED_OF_LIGHT

    @property
    def lambda_photon(self) -> float:
        return 2.0 * self.lambda_pump

    @property
    def conversion_wavelength(self) -> float:
        if self.conversion_lambda is None:
            return self.lambda_photon
        return self.conversion_lambda

    @property
    def omega0(self) -> float:
        """Pump angular frequency ω₀ = 2πc/λ₀ (rad/fs)."""
        return wavelength_to_angular_frequency(self.lambda_pump)


def wavelength_to_angular_frequency(wavelength: float) -> float:
    """Return ω = 2πc/λ in rad/fs for λ in nm."""
    if not wavelength > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength}")
    return 2.0 * math.pi * SPEED_OF_LIGHT / wavelength


def angular_frequency_to_wavelength(omega: float) -> float:
    """Inverse of `wavelength_to_angular_frequency`."""
    if not omega > 0:
        raise DomainError(f"angular frequency must be positive, got {omega}")
    return 2.0 * math.pi * SPEED_OF_LIGHT / omega


def wavelength_span_to_angular(span: float, lambda_center: float) -> float:
    """First-order conversion of a wavelength interval (nm) to rad/fs at `lambda_center`."""
    if not span > 0:
        raise DomainError(f"wavelength span must be positive, got {span}")
    if not lambda_center > 0:
        raise DomainError(f"center wavelength must be positive, got {lambda_center}")
    return 2.0 * math.pi * SPEED_OF_LIGHT * span / lambda_center**2


def fwhm_nm_to_sigma(fwhm: float, lambda_center: float) -> float:
    """Gaussian angular-frequency standard deviation for a FWHM given in nm."""
    return wavelength_span_to_angular(fwhm, lambda_center) / FWHM_PER_SIGMA


def path_difference_to_time(x: float, medium: Medium, ctx: UnitContext) -> float:
    """Interaction time τ (fs) for the dimensionless path difference x = Δn·L/λ_photon."""
    if x < 0:
        raise DomainError(f"path difference must be non-negative, got {x}")
    dn = _birefringence(medium)
    return x * ctx.lambda_photon / (SPEED_OF_LIGHT * dn)


def time_to_path_difference(tau: float, medium: Medium, ctx: UnitContext) -> float:
    """Inverse of `path_difference_to_time`."""
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    dn = _birefringence(medium)
    return tau * SPEED_OF_LIGHT * dn / ctx.lambda_photon


def _birefringence(medium: Medium) -> float:
    dn = medium.delta_n
    if not dn > 0:
        raise DomainError(f"protocol needs n_V > n_H, got delta_n = {dn}")
    return dn
