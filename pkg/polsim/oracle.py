"""Quadrature oracle — brute-force density-matrix elements for cross-checking the closed forms.

The frequency plane is integrated in rotated coordinates

    ω_a = ω₀/2 + (s + d)/√2,    ω_b = ω₀/2 + (s − d)/√2,

where s runs along the anticorrelation ridge and d across it. Both the
Gaussian amplitude and the pump kernel separate in (s, d), so the wide
pump needs two 2D sums per element and the finite pump a pair of
matrix products instead of a 4D loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from polsim.dephasing import BASIS, PolarizationMatrix, basis_index, closed_form_element
from polsim.erasure import Pump, kernel_factor
from polsim.errors import DomainError, NumericalError, ResolutionError, UnsupportedVariantError
from polsim.spectra import DiscretePair, GaussianSpectrum, JointSpectrum, Medium, amplitude

WIDE_PUMP = "wide"
NARROW_PUMP = "narrow"
PumpMode = Union[Pump, Literal["wide", "narrow"]]

SCHEMES = ("gauss-legendre", "trapezoid")
MIN_NODES_PER_PERIOD = 6
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Nodes per axis for one peak patch, window half-width in amplitude σ, node rule."""

    order: int = 96
    span: float = 8.0
    scheme: str = "gauss-legendre"

    def __post_init__(self) -> None:
        if self.order < 16:
            raise DomainError(f"quadrature order must be at least 16, got {self.order}")
        if self.span < 5:
            raise DomainError(f"quadrature span must be at least 5, got {self.span}")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown quadrature scheme {self.scheme!r}; choose from {SCHEMES}")

    def doubled(self) -> QuadratureSpec:
        return QuadratureSpec(2 * self.order, self.span, self.scheme)


@dataclass(frozen=True)
class QuadratureResult:
    raw: np.ndarray  # rescaled so diagonals are 2 at τ = 0, Hermitized
    asymmetry: float

    @property
    def matrix(self) -> PolarizationMatrix:
        tr = float(np.trace(self.raw).real)
        if not (math.isfinite(tr) and tr > 0):
            raise NumericalError(f"quadrature trace is {tr!r}; cannot normalize")
        return PolarizationMatrix(self.raw / tr).validate()


@dataclass(frozen=True)
class _Grid:
    s: np.ndarray
    d: np.ndarray
    weighted: np.ndarray  # w_s w_d g on the (s, d) mesh
    density: np.ndarray  # w_s w_d |g|²
    omega_c: float
    unit_s: float  # length of one patch along s
    unit_d: float


def _nodes(a: float, b: float, n: int, scheme: str) -> tuple[np.ndarray, np.ndarray]:
    if scheme == "gauss-legendre":
        x, w = np.polynomial.legendre.leggauss(n)
        half = 0.5 * (b - a)
        return a + half * (x + 1.0), half * w
    x = np.linspace(a, b, n)
    w = np.full(n, (b - a) / (n - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return x, w


def _axis(centers: list[float], half_width: float, spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    patches: list[list[float]] = []
    for c in sorted(centers):
        lo, hi = c - half_width, c + half_width
        if patches and lo <= patches[-1][1]:
            patches[-1][1] = max(patches[-1][1], hi)
        else:
            patches.append([lo, hi])
    xs, ws = [], []
    for lo, hi in patches:
        n = max(spec.order, math.ceil(spec.order * (hi - lo) / (2.0 * half_width)))
        x, w = _nodes(lo, hi, n, spec.scheme)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def _check_spectrum(spectrum: JointSpectrum) -> GaussianSpectrum:
    if isinstance(spectrum, DiscretePair):
        raise UnsupportedVariantError("quadrature needs a continuous spectrum, got DiscretePair")
    if abs(spectrum.k) >= 1.0:
        raise UnsupportedVariantError(
            f"quadrature needs |k| < 1, got k={spectrum.k}; use k = -0.99999 as a proxy"
        )
    return spectrum


def _grid(spectrum: JointSpectrum, spec: QuadratureSpec, separated: bool) -> _Grid:
    spectrum = _check_spectrum(spectrum)
    delta, k = spectrum.delta, spectrum.k
    sigma_s = delta * math.sqrt(2.0 * (1.0 + k))
    sigma_d = delta * math.sqrt(2.0 * (1.0 - k))
    omega_c = spectrum.omega0 / 2.0
    d_centers = [(ca - cb) / SQRT2 for ca, cb in spectrum.centers]
    s, ws = _axis([0.0], spec.span * sigma_s, spec)
    d, wd = _axis(d_centers, spec.span * sigma_d, spec)
    wa = omega_c + (s[:, None] + d[None, :]) / SQRT2
    wb = omega_c + (s[:, None] - d[None, :]) / SQRT2
    g = amplitude(spectrum, wa, wb, separated=separated)
    w2 = ws[:, None] * wd[None, :]
    return _Grid(
        s=s,
        d=d,
        weighted=w2 * g,
        density=w2 * g * g,
        omega_c=omega_c,
        unit_s=2.0 * spec.span * sigma_s,
        unit_d=2.0 * spec.span * sigma_d,
    )


def required_order(
    tau: float, spectrum: JointSpectrum, medium: Medium, spec: QuadratureSpec, narrow: bool = False
) -> int:
    """Smallest order keeping MIN_NODES_PER_PERIOD nodes per phase oscillation on both axes."""
    spectrum = _check_spectrum(spectrum)
    k = spectrum.k
    unit_s = 2.0 * spec.span * spectrum.delta * math.sqrt(2.0 * (1.0 + k))
    unit_d = 2.0 * spec.span * spectrum.delta * math.sqrt(2.0 * (1.0 - k))
    dn = abs(medium.delta_n)
    if narrow:
        rate_s = rate_d = SQRT2 * tau * dn
    else:
        rate_s = SQRT2 * tau * max(medium.n_h, medium.n_v)
        rate_d = tau * dn / SQRT2
    periods = max(unit_s * rate_s, unit_d * rate_d) / (2.0 * math.pi)
    return max(16, math.ceil(MIN_NODES_PER_PERIOD * periods))


def _check_resolution(
    tau: float, spectrum: JointSpectrum, medium: Medium, spec: QuadratureSpec, narrow: bool
) -> None:
    need = required_order(tau, spectrum, medium, spec, narrow)
    if spec.order < need:
        raise ResolutionError(
            f"order {spec.order} leaves fewer than {MIN_NODES_PER_PERIOD} nodes per phase "
            f"period at tau={tau:.6g} fs; use order >= {need}",
            required_order=need,
        )


def _v_count(pair: str) -> int:
    return pair.count("V")


def _carrier(tau: float, omega_c: float, dn: float, row: str, col: str) -> complex:
    # e^{iτω_c[(n_λ+n_μ) − (n_λ'+n_μ')]}; the index sums differ by a multiple of Δn.
    arg = tau * omega_c * dn * (_v_count(row) - _v_count(col))
    return complex(math.cos(arg), math.sin(arg))


def _phases(grid: _Grid, tau: float, medium: Medium, pair: str) -> tuple[np.ndarray, np.ndarray]:
    na = medium.index(pair[0])  # type: ignore[arg-type]
    nb = medium.index(pair[1])  # type: ignore[arg-type]
    ps = np.exp(1j * tau * (na + nb) * grid.s / SQRT2)
    pd = np.exp(1j * tau * (na - nb) * grid.d / SQRT2)
    return ps, pd


def _wide(grid: _Grid, tau: float, medium: Medium) -> np.ndarray:
    transforms = []
    for pair in BASIS:
        ps, pd = _phases(grid, tau, medium, pair)
        transforms.append(ps @ grid.weighted @ pd)
    w0 = float(grid.weighted.sum())
    scale = 2.0 / (w0 * w0)
    raw = np.empty((4, 4), dtype=complex)
    for i, row in enumerate(BASIS):
        for j, col in enumerate(BASIS):
            carrier = _carrier(tau, grid.omega_c, medium.delta_n, row, col)
            raw[i, j] = scale * carrier * transforms[i] * np.conj(transforms[j])
    return raw


def _finite(grid: _Grid, tau: float, medium: Medium, pump: Pump) -> np.ndarray:
    ks = kernel_factor(grid.s[:, None] - grid.s[None, :], pump)
    kd = kernel_factor(grid.d[:, None] - grid.d[None, :], pump)
    weighted = []
    for pair in BASIS:
        ps, pd = _phases(grid, tau, medium, pair)
        weighted.append(grid.weighted * ps[:, None] * pd[None, :])
    base = grid.weighted
    norm = float(np.sum(base * (ks @ base @ kd.T)).real)
    raw = np.empty((4, 4), dtype=complex)
    for i, row in enumerate(BASIS):
        for j, col in enumerate(BASIS):
            carrier = _carrier(tau, grid.omega_c, medium.delta_n, row, col)
            overlap = np.sum(weighted[i] * (ks @ np.conj(weighted[j]) @ kd.T))
            raw[i, j] = 2.0 * carrier * overlap / norm
    return raw


def _narrow(grid: _Grid, tau: float, medium: Medium) -> np.ndarray:
    dn = medium.delta_n
    total = float(grid.density.sum())
    raw = np.empty((4, 4), dtype=complex)
    for i, row in enumerate(BASIS):
        for j, col in enumerate(BASIS):
            da = dn * ((row[0] == "V") - (col[0] == "V"))
            db = dn * ((row[1] == "V") - (col[1] == "V"))
            ps = np.exp(1j * tau * (da + db) * grid.s / SQRT2)
            pd = np.exp(1j * tau * (da - db) * grid.d / SQRT2)
            carrier = _carrier(tau, grid.omega_c, dn, row, col)
            raw[i, j] = 2.0 * carrier * (ps @ grid.density @ pd) / total
    return raw


def matrix_quadrature(
    tau: float,
    spectrum: JointSpectrum,
    medium: Medium,
    pump: PumpMode = WIDE_PUMP,
    spec: QuadratureSpec = QuadratureSpec(),
    *,
    separated: bool = True,
) -> QuadratureResult:
    """All sixteen elements by quadrature, rescaled to the closed-form convention."""
    if tau < 0:
        raise DomainError(f"interaction time must be non-negative, got {tau}")
    narrow = pump == NARROW_PUMP
    _check_resolution(tau, spectrum, medium, spec, narrow)
    grid = _grid(spectrum, spec, separated)
    if isinstance(pump, Pump):
        raw = _finite(grid, tau, medium, pump)
    elif pump == WIDE_PUMP:
        raw = _wide(grid, tau, medium)
    elif narrow:
        raw = _narrow(grid, tau, medium)
    else:
        raise DomainError(f"unknown pump mode {pump!r}")
    if not np.all(np.isfinite(raw)):
        raise NumericalError("quadrature produced non-finite elements")
    asymmetry = float(np.max(np.abs(raw - raw.conj().T)))
    return QuadratureResult(raw=0.5 * (raw + raw.conj().T), asymmetry=asymmetry)


def element_quadrature(
    row: str,
    col: str,
    tau: float,
    spectrum: JointSpectrum,
    medium: Medium,
    pump: PumpMode = WIDE_PUMP,
    spec: QuadratureSpec = QuadratureSpec(),
    *,
    separated: bool = True,
) -> complex:
    """One element ⟨row|ρ|col⟩, comparable with `closed_form_element`."""
    i, j = basis_index(row), basis_index(col)
    result = matrix_quadrature(tau, spectrum, medium, pump, spec, separated=separated)
    return complex(result.raw[i, j])


def full_matrix_quadrature(
    tau: float,
    spectrum: JointSpectrum,
    medium: Medium,
    pump: PumpMode = WIDE_PUMP,
    spec: QuadratureSpec = QuadratureSpec(),
    *,
    separated: bool = True,
) -> PolarizationMatrix:
    return matrix_quadrature(tau, spectrum, medium, pump, spec, separated=separated).matrix


def convergence_drift(
    tau: float,
    spectrum: JointSpectrum,
    medium: Medium,
    pump: PumpMode = WIDE_PUMP,
    spec: QuadratureSpec = QuadratureSpec(),
    *,
    separated: bool = True,
) -> float:
    """Largest element change when the order is doubled."""
    base = matrix_quadrature(tau, spectrum, medium, pump, spec, separated=separated)
    fine = matrix_quadrature(tau, spectrum, medium, pump, spec.doubled(), separated=separated)
    return float(np.max(np.abs(fine.raw - base.raw)))


def norm_quadrature(
    spectrum: JointSpectrum, spec: QuadratureSpec = QuadratureSpec(), *, separated: bool = False
) -> float:
    """∫∫|g|² on the oracle grid."""
    return float(_grid(spectrum, spec, separated).density.sum())


def _decay_rates(spectrum: GaussianSpectrum, medium: Medium) -> list[float]:
    h, v, k = medium.n_h, medium.n_v, spectrum.k
    return [
        2.0 * (1.0 + k) * h * h,
        h * h + 2.0 * k * h * v + v * v,
        2.0 * (1.0 + k) * v * v,
    ]


def oracle_tau_grid(
    spectrum: JointSpectrum, medium: Medium, points: int = 5, max_exponent: float = 12.0
) -> np.ndarray:
    """Evenly spaced τ from 0 until the fastest-decaying element has fallen by e^{-max_exponent}.

    Element (i, j) decays as exp[-(q_i + q_j)(τδ)²], so stopping at the
    largest q keeps every compared element far above double-precision
    round-off of the quadrature sums.
    """
    if isinstance(spectrum, DiscretePair):
        raise UnsupportedVariantError("tau grid needs a continuous spectrum")
    if points < 2:
        raise DomainError(f"need at least 2 points, got {points}")
    if not max_exponent > 0:
        raise DomainError(f"max_exponent must be positive, got {max_exponent}")
    fastest = 2.0 * max(_decay_rates(spectrum, medium))
    tau_max = math.sqrt(max_exponent / fastest) / spectrum.delta
    return np.linspace(0.0, tau_max, points)


def closed_form_raw(tau: float, spectrum: JointSpectrum, medium: Medium) -> np.ndarray:
    return np.array(
        [[closed_form_element(r, c, tau, spectrum, medium) for c in BASIS] for r in BASIS]
    )


def max_relative_error(estimate: np.ndarray, reference: np.ndarray, floor: float = 1e-12) -> float:
    """max |estimate − reference| / max(|reference|, floor) over all elements."""
    diff = np.abs(np.asarray(estimate) - np.asarray(reference))
    return float(np.max(diff / np.maximum(np.abs(reference), floor)))


def max_detuning(spectrum: JointSpectrum, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Largest |ω_a − ω_a'| (or |ω_b − ω_b'|) between nodes of the oracle grid."""
    spectrum = _check_spectrum(spectrum)
    sigma_s = spectrum.delta * math.sqrt(2.0 * (1.0 + spectrum.k))
    sigma_d = spectrum.delta * math.sqrt(2.0 * (1.0 - spectrum.k))
    d_centers = [(ca - cb) / SQRT2 for ca, cb in spectrum.centers]
    extent_s = 2.0 * spec.span * sigma_s
    extent_d = max(d_centers) - min(d_centers) + 2.0 * spec.span * sigma_d
    return (extent_s + extent_d) / SQRT2
