"""Dephasing — reduced polarization density matrices after birefringent dephasing and erasure."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Literal

import numpy as np
from numpy.typing import ArrayLike

from polsim.errors import DomainError, InvalidStateError, NumericalError, UnsupportedVariantError
from polsim.spectra import (
    DiscretePair,
    DoublePeak,
    JointSpectrum,
    Medium,
    Polarization,
    SinglePeak,
    characteristic_function,
)

PolPair = Literal["HH", "HV", "VH", "VV"]
BASIS: tuple[PolPair, ...] = ("HH", "HV", "VH", "VV")

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
MIN_EXPONENT = -700.0


def basis_index(pair: str) -> int:
    try:
        return BASIS.index(pair)  # type: ignore[arg-type]
    except ValueError:
        raise DomainError(f"unknown polarization pair {pair!r}") from None


@dataclass(frozen=True)
class PolarizationMatrix:
    """4×4 two-qubit density matrix in basis order (HH, HV, VH, VV)."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=complex)
        if arr.shape != (4, 4):
            raise InvalidStateError(f"density matrix must be 4x4, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_vector(cls, vector: ArrayLike) -> PolarizationMatrix:
        """Projector onto a (not necessarily normalized) pure state."""
        v = np.asarray(vector, dtype=complex).reshape(4)
        norm2 = float(np.vdot(v, v).real)
        if norm2 <= 0:
            raise InvalidStateError("cannot build a state from the zero vector")
        return cls(np.outer(v, v.conj()) / norm2)

    def __getitem__(self, key: tuple[str, str]) -> complex:
        row, col = key
        return complex(self.entries[basis_index(row), basis_index(col)])

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    @property
    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        herm = 0.5 * (self.entries + self.entries.conj().T)
        return np.linalg.eigvalsh(herm)

    def upper_triangle(self) -> Iterator[tuple[str, str, complex]]:
        """The ten independent elements, row-major."""
        for i, row in enumerate(BASIS):
            for j in range(i, 4):
                yield row, BASIS[j], complex(self.entries[i, j])

    def validate(self) -> PolarizationMatrix:
        """Raise InvalidStateError unless Hermitian, unit-trace and positive semidefinite."""
        if not np.all(np.isfinite(self.entries)):
            raise InvalidStateError("density matrix has non-finite entries")
        herm = self.hermiticity_error
        if herm > HERMITIAN_TOL:
            raise InvalidStateError(f"density matrix is not Hermitian (deviation {herm:.3e})")
        if abs(self.trace - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace is {self.trace!r}, expected 1")
        low = float(self.eigenvalues()[0])
        if low < -PSD_TOL:
            raise InvalidStateError(f"density matrix has negative eigenvalue {low:.3e}")
        return self


# --- Phases ---


def dephasing_phase(
    lambda_pol: Polarization,
    mu_pol: Polarization,
    omega_a: ArrayLike,
    omega_b: ArrayLike,
    tau: float,
    medium: Medium,
) -> np.ndarray | complex:
    """exp[iτ(n_λ ω_a + n_μ ω_b)] picked up by the |λ_a μ_b⟩ component."""
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    na = medium.index(lambda_pol)
    nb = medium.index(mu_pol)
    phase = np.exp(1j * tau * (na * np.asarray(omega_a) + nb * np.asarray(omega_b)))
    if np.ndim(phase) == 0:
        return complex(phase)
    return phase


# --- Closed forms after wide-pump erasure ---


def _peak_frequencies(spectrum: JointSpectrum) -> tuple[float, float]:
    if isinstance(spectrum, DiscretePair):
        raise UnsupportedVariantError(
            "closed forms need a Gaussian spectrum; use the discrete module for DiscretePair"
        )
    if isinstance(spectrum, SinglePeak):
        half = spectrum.omega0 / 2.0
        return half, half
    if isinstance(spectrum, DoublePeak):
        return spectrum.omega1, spectrum.omega2
    raise UnsupportedVariantError(f"unknown spectrum type {type(spectrum).__name__}")


_ExponentRate = Callable[[float, float, float], float]

# Printed exponent rates; the element carries exp(-rate * (τδ)²).
_RATES: dict[tuple[str, str], _ExponentRate] = {
    ("HH", "HH"): lambda h, v, k: 4 * (1 + k) * h * h,
    ("HH", "HV"): lambda h, v, k: (3 + 2 * k) * h * h + 2 * k * h * v + v * v,
    ("HH", "VH"): lambda h, v, k: (3 + 2 * k) * h * h + 2 * k * h * v + v * v,
    ("HH", "VV"): lambda h, v, k: 2 * (1 + k) * (h * h + v * v),
    ("HV", "HV"): lambda h, v, k: 2 * (h * h + 2 * k * h * v + v * v),
    ("HV", "VH"): lambda h, v, k: 2 * (h * h + 2 * k * h * v + v * v),
    ("VH", "VH"): lambda h, v, k: 2 * (h * h + 2 * k * h * v + v * v),
    ("HV", "VV"): lambda h, v, k: (3 + 2 * k) * v * v + 2 * k * h * v + h * h,
    ("VH", "VV"): lambda h, v, k: (3 + 2 * k) * v * v + 2 * k * h * v + h * h,
    ("VV", "VV"): lambda h, v, k: 4 * (1 + k) * v * v,
}


def _prefactor(row: str, col: str, tau: float, omega1: float, omega2: float, dn: float) -> complex:
    half_beat = 0.5 * tau * dn * (omega2 - omega1)
    half_carrier = 0.5 * tau * dn * (omega1 + omega2)
    if row == col and row in ("HH", "VV"):
        return 2.0
    if (row, col) == ("HH", "VV"):
        return 2.0 * complex(math.cos(2 * half_carrier), -math.sin(2 * half_carrier))
    if row in ("HV", "VH") and col in ("HV", "VH"):
        # 1 + cos(τΔnΔΩ)
        return 2.0 * math.cos(half_beat) ** 2
    # e^{-iτΔnΩ₁} + e^{-iτΔnΩ₂}
    return 2.0 * math.cos(half_beat) * complex(math.cos(half_carrier), -math.sin(half_carrier))


def _element_terms(
    row: str, col: str, tau: float, spectrum: JointSpectrum, medium: Medium
) -> tuple[complex, float]:
    """(prefactor, exponent) of one element; lower-triangle entries are conjugated."""
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    omega1, omega2 = _peak_frequencies(spectrum)
    i, j = basis_index(row), basis_index(col)
    conj = i > j
    if conj:
        row, col = col, row
    u = (tau * spectrum.delta) ** 2
    rate = _RATES[(row, col)](medium.n_h, medium.n_v, spectrum.k)
    pref = _prefactor(row, col, tau, omega1, omega2, medium.delta_n)
    if conj:
        pref = pref.conjugate() if isinstance(pref, complex) else pref
    return complex(pref), -rate * u


def closed_form_element(
    row: PolPair, col: PolPair, tau: float, spectrum: JointSpectrum, medium: Medium
) -> complex:
    """Unnormalized ⟨row|ρ|col⟩ after wide-pump erasure; every element is 2 at τ = 0."""
    pref, exponent = _element_terms(row, col, tau, spectrum, medium)
    return pref * math.exp(max(exponent, MIN_EXPONENT))


def _assemble(terms: list[list[tuple[complex, float]]], shift: float) -> np.ndarray:
    out = np.empty((4, 4), dtype=complex)
    for i in range(4):
        for j in range(4):
            pref, exponent = terms[i][j]
            out[i, j] = pref * math.exp(max(exponent - shift, MIN_EXPONENT))
    return out


def _normalize(raw: np.ndarray) -> PolarizationMatrix:
    tr = float(np.trace(raw).real)
    if not (math.isfinite(tr) and tr > 0):
        raise NumericalError(f"density matrix trace is {tr!r}; cannot normalize")
    return PolarizationMatrix(raw / tr).validate()


def density_matrix(tau: float, spectrum: JointSpectrum, medium: Medium) -> PolarizationMatrix:
    """Trace-normalized polarization state after dephasing for τ and wide-pump upconversion."""
    terms = [[_element_terms(r, c, tau, spectrum, medium) for c in BASIS] for r in BASIS]
    # Common factor removed before exponentiating so strong decay does not underflow.
    shift = max(terms[0][0][1], terms[3][3][1])
    return _normalize(_assemble(terms, shift))


# --- Dephasing without erasure ---


def unerased_element(
    row: PolPair, col: PolPair, tau: float, spectrum: JointSpectrum, medium: Medium
) -> complex:
    """⟨row|ρ|col⟩ after dephasing alone, frequencies traced out; 2 on the diagonal.

    Equals twice the characteristic function of |g|² at
    t = τ(n_λ − n_λ', n_μ − n_μ'). Accepts |k| = 1 and the discrete pair.
    """
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    i, j = basis_index(row), basis_index(col)
    t_a = tau * (medium.index(BASIS[i][0]) - medium.index(BASIS[j][0]))  # type: ignore[arg-type]
    t_b = tau * (medium.index(BASIS[i][1]) - medium.index(BASIS[j][1]))  # type: ignore[arg-type]
    return 2.0 * characteristic_function(spectrum, t_a, t_b)


def unerased_density_matrix(
    tau: float, spectrum: JointSpectrum, medium: Medium
) -> PolarizationMatrix:
    raw = np.array(
        [[unerased_element(r, c, tau, spectrum, medium) for c in BASIS] for r in BASIS]
    )
    return _normalize(raw)
