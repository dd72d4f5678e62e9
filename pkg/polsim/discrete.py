"""Discrete colors — exact dephasing and ideal upconversion of (|ω₁ω₂⟩ + |ω₂ω₁⟩)/√2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from polsim.dephasing import BASIS, PolarizationMatrix, basis_index
from polsim.errors import DegenerateOutcomeError, DomainError, InvalidStateError
from polsim.spectra import DiscretePair, Medium

FREQUENCY_BASIS = ("w1w2", "w2w1", "w1w1", "w2w2")
NORM_TOL = 1e-12
DEGENERATE_NORM2 = 1e-24


@dataclass(frozen=True)
class DiscreteTotalState:
    """Polarization ⊗ frequency amplitudes; rows follow BASIS, columns FREQUENCY_BASIS."""

    coefficients: np.ndarray
    omega1: float
    omega2: float

    def __post_init__(self) -> None:
        arr = np.array(self.coefficients, dtype=complex)
        if arr.shape != (4, 4):
            raise InvalidStateError(f"coefficients must be 4x4, got shape {arr.shape}")
        norm2 = float(np.sum(np.abs(arr) ** 2))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidStateError(f"total state is not normalized (|psi|^2 = {norm2!r})")
        arr.setflags(write=False)
        object.__setattr__(self, "coefficients", arr)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coefficients) ** 2)))

    def schmidt_coefficients(self) -> np.ndarray:
        """Singular values across the polarization | frequency cut."""
        return np.linalg.svd(self.coefficients, compute_uv=False)


def evolve_discrete(
    tau: float, omega1: float, omega2: float, medium: Medium
) -> DiscreteTotalState:
    """Dephase the |++⟩ polarization state for time τ in both arms.

    The global phase e^{iτ(n_H+n_V)ω₀/2} is dropped; it differs from the
    e^{iτn_Hω₀} convention only by another global phase.
    """
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    DiscretePair(omega1, omega2)
    mean_n = 0.5 * (medium.n_h + medium.n_v)
    coeffs = np.zeros((4, 4), dtype=complex)
    amp = 1.0 / (2.0 * math.sqrt(2.0))
    for i, pair in enumerate(BASIS):
        na = medium.index(pair[0]) - mean_n  # type: ignore[arg-type]
        nb = medium.index(pair[1]) - mean_n  # type: ignore[arg-type]
        coeffs[i, 0] = amp * np.exp(1j * tau * (na * omega1 + nb * omega2))
        coeffs[i, 1] = amp * np.exp(1j * tau * (na * omega2 + nb * omega1))
    return DiscreteTotalState(coeffs, omega1, omega2)


def critical_times(
    omega1: float, omega2: float, medium: Medium, m: int = 0
) -> tuple[float, float]:
    """The m-th constructive (τ_c) and destructive (τ_d) interference times."""
    if m < 0 or int(m) != m:
        raise DomainError(f"m must be a non-negative integer, got {m}")
    beat = medium.delta_n * abs(omega2 - omega1)
    if beat == 0:
        raise DomainError("critical times need omega1 != omega2 and a birefringent medium")
    return 2 * m * math.pi / beat, (2 * m + 1) * math.pi / beat


def _upconverted_vector(state: DiscreteTotalState) -> np.ndarray:
    # Every frequency component lands on |ω_u, ω_u⟩; amplitudes add coherently.
    return state.coefficients.sum(axis=1)


def ideal_upconvert(
    state: DiscreteTotalState, omega_u: Optional[float] = None
) -> PolarizationMatrix:
    """Post-selected polarization state after mapping both photons to ω_u.

    ω_u factors out of the polarization state; it defaults to ω₀ and only
    has to be positive.
    """
    if omega_u is not None and not omega_u > 0:
        raise DomainError(f"omega_u must be positive, got {omega_u}")
    vec = _upconverted_vector(state)
    norm2 = float(np.vdot(vec, vec).real)
    if norm2 < DEGENERATE_NORM2:
        raise DegenerateOutcomeError("no amplitude survives upconversion")
    return PolarizationMatrix.from_vector(vec).validate()


def cancellation_residual(state: DiscreteTotalState) -> float:
    """Norm of the HV/VH amplitude that survives upconversion (0 at every τ_d)."""
    vec = _upconverted_vector(state)
    return float(np.linalg.norm(vec[[basis_index("HV"), basis_index("VH")]]))


def subspace_states(state: DiscreteTotalState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Normalized ψ₀ (HH/VV sector), ψ₁ (HV/VH on |ω₁ω₂⟩) and ψ₂ (HV/VH on |ω₂ω₁⟩)."""
    c = state.coefficients
    hh_vv = [basis_index("HH"), basis_index("VV")]
    hv_vh = [basis_index("HV"), basis_index("VH")]
    psi0 = np.zeros(4, dtype=complex)
    psi1 = np.zeros(4, dtype=complex)
    psi2 = np.zeros(4, dtype=complex)
    psi0[hh_vv] = c[hh_vv, 0]
    psi1[hv_vh] = c[hv_vh, 0]
    psi2[hv_vh] = c[hv_vh, 1]
    out = []
    for psi in (psi0, psi1, psi2):
        n = np.linalg.norm(psi)
        if n == 0:
            raise InvalidStateError("state has an empty polarization subspace")
        out.append(psi / n)
    return out[0], out[1], out[2]


def subspace_overlap(state: DiscreteTotalState) -> complex:
    """⟨ψ₁|ψ₂⟩, which equals cos(τΔnΔΩ)."""
    _, psi1, psi2 = subspace_states(state)
    return complex(np.vdot(psi1, psi2))
