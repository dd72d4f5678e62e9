"""Validation suite — oracle cross-checks and invariant checks behind `polsim validate`."""

from __future__ import annotations

import dataclasses
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.stats import unitary_group

from polsim.config import SweepSpec
from polsim.dephasing import BASIS, PolarizationMatrix, density_matrix, unerased_element
from polsim.discrete import critical_times, evolve_discrete, ideal_upconvert
from polsim.entanglement import concurrence
from polsim.erasure import Pump, wide_pump_ratio
from polsim.errors import ConfigError, PolsimError, SeparationWarning, UnsupportedVariantError
from polsim.oracle import (
    NARROW_PUMP,
    WIDE_PUMP,
    QuadratureSpec,
    closed_form_raw,
    convergence_drift,
    matrix_quadrature,
    max_detuning,
    max_relative_error,
    oracle_tau_grid,
)
from polsim.presets import PRESET_NAMES, get_preset
from polsim.spectra import DoublePeak, Medium, SinglePeak
from polsim.sweep import SweepRow, evaluate_point, run_sweep, summarize
from polsim.units import path_difference_to_time

ORACLE_K_CLAMP = -0.999


@dataclass
class Check:
    name: str
    description: str
    passed: bool = False
    detail: str = ""
    seconds: float = 0.0


@dataclass
class ValidationOptions:
    order: int = 96
    tol: float = 1e-6
    scheme: str = "gauss-legendre"
    k: Optional[float] = None          # overrides k on the oracle curves
    corrupt_element: Optional[tuple[str, str]] = None  # negative control
    workers: int = 4
    seed: int = 20240611

    @property
    def quadrature(self) -> QuadratureSpec:
        return QuadratureSpec(order=self.order, scheme=self.scheme)


@dataclass
class _Context:
    options: ValidationOptions
    sweeps: dict[tuple[str, int], list[SweepRow]] = field(default_factory=dict)

    def preset_rows(self, name: str, index: int) -> list[SweepRow]:
        key = (name, index)
        if key not in self.sweeps:
            curve = get_preset(name).curves[index]
            curve = dataclasses.replace(curve, workers=self.options.workers)
            self.sweeps[key] = run_sweep(curve)
        return self.sweeps[key]

    def preset_curves(self, name: str) -> list[tuple[SweepSpec, list[SweepRow]]]:
        curves = get_preset(name).curves
        return [(c, self.preset_rows(name, i)) for i, c in enumerate(curves)]


# --- Checks ---


def _discrete_ideal(ctx: _Context) -> str:
    curve = get_preset("fig3").curves[0]
    spec = dataclasses.replace(curve, model="discrete")
    pair = spec.spectrum()
    medium = spec.medium()
    worst = 0.0
    for m in (0, 1, 2):
        tau_c, tau_d = critical_times(pair.omega1, pair.omega2, medium, m)  # type: ignore[union-attr]
        c_d = concurrence(ideal_upconvert(evolve_discrete(tau_d, pair.omega1, pair.omega2, medium)))  # type: ignore[union-attr]
        c_c = concurrence(ideal_upconvert(evolve_discrete(tau_c, pair.omega1, pair.omega2, medium)))  # type: ignore[union-attr]
        worst = max(worst, abs(c_d - 1.0), abs(c_c))
    _require(worst <= 1e-10, f"max deviation {worst:.3e} from C(tau_d)=1, C(tau_c)=0")
    return f"max deviation {worst:.2e} over m = 0, 1, 2"


def _oracle_curves(ctx: _Context) -> list[tuple[str, SweepSpec]]:
    curves = []
    for name in PRESET_NAMES:
        for curve in get_preset(name).curves:
            k = ctx.options.k if ctx.options.k is not None else max(curve.k, ORACLE_K_CLAMP)
            curves.append((f"{name}/{curve.label}", dataclasses.replace(curve, k=k)))
    return curves


def _oracle_agreement(ctx: _Context) -> str:
    spec = ctx.options.quadrature
    worst = (0.0, "", "", 0.0)
    for label, curve in _oracle_curves(ctx):
        spectrum = curve.spectrum()
        medium = curve.medium()
        for tau in oracle_tau_grid(spectrum, medium):
            reference = closed_form_raw(float(tau), spectrum, medium)
            if ctx.options.corrupt_element is not None:
                i, j = (BASIS.index(p) for p in ctx.options.corrupt_element)  # type: ignore[arg-type]
                reference[i, j] *= 1.001
            estimate = matrix_quadrature(float(tau), spectrum, medium, WIDE_PUMP, spec).raw
            diff = np.abs(estimate - reference) / np.maximum(np.abs(reference), 1e-12)
            i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
            if diff[i, j] > worst[0]:
                worst = (float(diff[i, j]), f"{BASIS[i]},{BASIS[j]}", label, float(tau))
    err, element, label, tau = worst
    detail = f"max relative error {err:.2e} at element {element} ({label}, tau={tau:.6g} fs)"
    _require(err <= ctx.options.tol, detail)
    return detail


def _oracle_convergence(ctx: _Context) -> str:
    spec = ctx.options.quadrature
    worst = (0.0, "", 0.0)
    for label, curve in _oracle_curves(ctx):
        spectrum = curve.spectrum()
        medium = curve.medium()
        for tau in oracle_tau_grid(spectrum, medium):
            drift = convergence_drift(float(tau), spectrum, medium, WIDE_PUMP, spec)
            if drift > worst[0]:
                worst = (drift, label, float(tau))
    drift, label, tau = worst
    detail = f"order-doubling drift {drift:.2e}" + (f" ({label}, tau={tau:.6g} fs)" if label else "")
    _require(drift < 1e-7, detail)
    return detail


def _narrow_pump_limit(ctx: _Context) -> str:
    spec = ctx.options.quadrature
    worst = 0.0
    for _, curve in _oracle_curves(ctx):
        spectrum = curve.spectrum()
        medium = curve.medium()
        for tau in oracle_tau_grid(spectrum, medium):
            t = float(tau)
            est = matrix_quadrature(t, spectrum, medium, NARROW_PUMP, spec, separated=False).raw
            ref = np.array([[unerased_element(r, c, t, spectrum, medium) for c in BASIS] for r in BASIS])
            worst = max(worst, max_relative_error(est, ref))
    _require(worst <= ctx.options.tol, f"max relative error {worst:.2e} against unerased closed form")
    return f"max relative error {worst:.2e}"


def _bell_anchor(ctx: _Context) -> str:
    curve = get_preset("fig3").curves[0]
    spectrum = curve.spectrum()
    medium = curve.medium()
    assert isinstance(spectrum, DoublePeak)
    _, tau_d = critical_times(spectrum.omega1, spectrum.omega2, medium, 0)
    c = concurrence(density_matrix(tau_d, spectrum, medium))
    _require(abs(c - 1.0) <= 1e-12, f"C(tau_d) = {c!r}")
    rows = ctx.preset_rows("fig3", 0)
    step = rows[1].x - rows[0].x
    peak = summarize(rows).first_peak_x
    _require(peak is not None and abs(peak - 260.0) <= step, f"first maximum at x = {peak}")
    return f"C(tau_d) = {c:.15f}, first maximum at x = {peak:g}"


def _asymptotics(ctx: _Context) -> str:
    far = 2000.0
    fig3 = [
        evaluate_point(far, c.spectrum(), c.medium(), c.units()).concurrence
        for c in get_preset("fig3", conversion_lambda_nm=780.0).curves
    ]
    fig4 = [
        evaluate_point(far, c.spectrum(), c.medium(), c.units()).concurrence
        for c in get_preset("fig4", conversion_lambda_nm=780.0).curves
    ]
    peaks = []
    for _, rows in ctx.preset_curves("fig4"):
        s = summarize(rows)
        peaks.append(s.first_peak_concurrence if s.first_peak_concurrence is not None else s.max_concurrence)
    _require(min(fig3) >= 0.999, f"fig3 C(x=2000) = {min(fig3):.6f} < 0.999")
    _require(max(fig4) <= 0.01, f"fig4 C(x=2000) = {max(fig4):.6f} > 0.01")
    _require(peaks[0] > peaks[1] > peaks[2], f"first peaks not decreasing in k: {peaks}")
    return (
        f"fig3 min C(2000) = {min(fig3):.6f}, fig4 max C(2000) = {max(fig4):.2e} "
        f"(780 nm reading); first peaks {', '.join(f'{p:.4f}' for p in peaks)}"
    )


def _single_peak_ordering(ctx: _Context) -> str:
    curves = [rows for _, rows in ctx.preset_curves("fig5")]
    for rows in curves:
        drops = [b.concurrence - a.concurrence for a, b in zip(rows, rows[1:])]
        _require(min(drops) >= -1e-9, f"curve decreases by {-min(drops):.2e}")
    for narrow, wide in zip(curves, curves[1:]):
        gap = min(w.concurrence - n.concurrence for n, w in zip(narrow, wide))
        _require(gap >= -1e-12, f"narrower FWHM exceeds wider by {-gap:.2e}")
    return "monotone; wider FWHM dominates at every x"


def _single_peak_max(ctx: _Context) -> str:
    maxima = [summarize(rows).max_concurrence for _, rows in ctx.preset_curves("fig6")]
    spread = max(maxima) - min(maxima)
    _require(spread <= 5e-3, f"maxima {maxima} spread {spread:.2e}")
    return f"maxima {', '.join(f'{m:.5f}' for m in maxima)}"


def _state_validity(ctx: _Context) -> str:
    count = 0
    for name in PRESET_NAMES:
        for _, rows in ctx.preset_curves(name):
            for row in rows:
                row.matrix.validate()
                count += 1
    return f"{count} matrices Hermitian, unit trace and PSD"


def _concurrence_units(ctx: _Context) -> str:
    bell = PolarizationMatrix.from_vector([1, 0, 0, 1])
    mixed = PolarizationMatrix(np.eye(4) / 4)
    werner = PolarizationMatrix(0.5 * bell.entries + 0.5 * mixed.entries)
    _require(abs(concurrence(bell) - 1.0) <= 1e-10, "Bell state")
    _require(abs(concurrence(mixed)) <= 1e-10, "maximally mixed state")
    _require(abs(concurrence(werner) - 0.25) <= 1e-10, "Werner state p = 1/2")
    rng = np.random.default_rng(ctx.options.seed)
    worst = 0.0
    for _ in range(100):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = PolarizationMatrix(a @ a.conj().T / np.trace(a @ a.conj().T).real)
        u = np.kron(unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng))
        rotated = u @ rho.entries @ u.conj().T
        rotated = PolarizationMatrix(0.5 * (rotated + rotated.conj().T))
        worst = max(worst, abs(concurrence(rotated) - concurrence(rho)))
    _require(worst <= 1e-9, f"local-unitary drift {worst:.2e}")
    return f"Bell, I/4, Werner exact; local-unitary drift {worst:.1e}"


def _erasure_limits(ctx: _Context) -> str:
    ratios = [wide_pump_ratio(1.0, Pump(sigma=s)) for s in (1.0, 2.0, 5.0, 10.0, 100.0)]
    _require(all(b > a for a, b in zip(ratios, ratios[1:])), f"ratio not increasing: {ratios}")
    _require(ratios[3] >= 0.995, f"ratio at 10x detuning {ratios[3]:.5f}")
    spec = ctx.options.quadrature
    curve = get_preset("fig4").curves[1]
    spectrum = curve.spectrum()
    medium = curve.medium()
    pump = Pump(sigma=100.0 * max_detuning(spectrum, spec))
    worst = 0.0
    for tau in oracle_tau_grid(spectrum, medium, points=3):
        wide = matrix_quadrature(float(tau), spectrum, medium, WIDE_PUMP, spec).raw
        finite = matrix_quadrature(float(tau), spectrum, medium, pump, spec).raw
        worst = max(worst, max_relative_error(finite, wide, floor=1e-9))
    _require(worst <= 1e-3, f"finite pump differs from wide pump by {worst:.2e}")
    return f"ratio(10x) = {ratios[3]:.5f}; finite vs wide pump {worst:.1e}"


def _single_peak_reduction(ctx: _Context) -> str:
    rng = np.random.default_rng(ctx.options.seed + 1)
    medium = Medium(1.51004, 1.54360)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparationWarning)
        for _ in range(20):
            omega0 = rng.uniform(1.0, 4.0)
            delta = rng.uniform(1e-4, 5e-3)
            k = rng.uniform(-1.0, 0.0)
            tau = rng.uniform(0.0, 3.0) / (delta * medium.n_v)
            single = density_matrix(tau, SinglePeak(omega0, delta, k), medium)
            double = density_matrix(tau, DoublePeak(omega0 / 2, omega0 / 2, delta, k), medium)
            worst = max(worst, float(np.max(np.abs(single.entries - double.entries))))
    _require(worst <= 1e-12, f"max entry difference {worst:.2e}")
    return f"max entry difference {worst:.1e} over 20 samples"


def _discrete_limit(ctx: _Context) -> str:
    curve = get_preset("fig3").curves[0]
    medium = curve.medium()
    pair = dataclasses.replace(curve, model="discrete").spectrum()
    limit = DoublePeak(pair.omega1, pair.omega2, 1e-12, -1.0)  # type: ignore[union-attr]
    worst = 0.0
    for x in np.linspace(0.0, 400.0, 41):
        tau = path_difference_to_time(float(x), medium, curve.units())
        closed = density_matrix(tau, limit, medium)
        ideal = ideal_upconvert(evolve_discrete(tau, limit.omega1, limit.omega2, medium))
        worst = max(worst, float(np.max(np.abs(closed.entries - ideal.entries))))
    _require(worst <= 1e-9, f"max entry difference {worst:.2e}")
    return f"max entry difference {worst:.1e}"


class CheckFailed(Exception):
    pass


def _require(condition: bool, detail: str) -> None:
    if not condition:
        raise CheckFailed(detail)


CheckFn = Callable[[_Context], str]

CHECKS: list[tuple[str, str, CheckFn]] = [
    ("discrete-ideal", "ideal discrete case reaches C = 1 at tau_d and 0 at tau_c", _discrete_ideal),
    ("oracle-agreement", "closed forms match wide-pump quadrature on all presets", _oracle_agreement),
    ("oracle-convergence", "doubling the quadrature order changes nothing", _oracle_convergence),
    ("narrow-pump-limit", "narrow-pump quadrature matches dephasing without erasure", _narrow_pump_limit),
    ("bell-anchor", "k = -1 double peak is maximally entangled at tau_d, x = 260", _bell_anchor),
    ("asymptotics", "long-path limits and first-peak ordering in k", _asymptotics),
    ("single-peak-ordering", "k = -1 single peak grows monotonically, faster when wider", _single_peak_ordering),
    ("single-peak-max", "k = -0.999 single-peak maximum independent of FWHM", _single_peak_max),
    ("state-validity", "every preset matrix is a valid density matrix", _state_validity),
    ("concurrence-units", "concurrence reference states and local-unitary invariance", _concurrence_units),
    ("erasure-limits", "wide-pump limit of the erasure kernel", _erasure_limits),
    ("single-peak-reduction", "double peak with equal centers equals single peak", _single_peak_reduction),
    ("discrete-limit", "delta -> 0, k = -1 double peak equals the discrete protocol", _discrete_limit),
]

CHECK_NAMES = tuple(name for name, _, _ in CHECKS)


def run_validation(
    options: Optional[ValidationOptions] = None,
    *,
    only: Optional[list[str]] = None,
    progress: Optional[Callable[[int, int, str], None]] = None,
) -> list[Check]:
    """Run the registered checks; quadrature parameter errors raise before any check runs."""
    options = options or ValidationOptions()
    _ = options.quadrature  # bad order or scheme raises DomainError here
    if options.k is not None and abs(options.k) >= 1.0:
        raise UnsupportedVariantError(
            f"quadrature needs |k| < 1, got k={options.k}; use k = -0.99999 as a proxy"
        )
    if only is not None:
        unknown = sorted(set(only) - set(CHECK_NAMES))
        if unknown:
            raise ConfigError("check", f"unknown checks: {', '.join(unknown)}")
    selected = [c for c in CHECKS if only is None or c[0] in only]
    ctx = _Context(options)
    results: list[Check] = []
    for i, (name, description, fn) in enumerate(selected, 1):
        check = Check(name=name, description=description)
        start = time.perf_counter()
        try:
            check.detail = fn(ctx)
            check.passed = True
        except CheckFailed as exc:
            check.detail = str(exc)
        except PolsimError as exc:
            check.detail = f"{type(exc).__name__}: {exc}"
        check.seconds = time.perf_counter() - start
        results.append(check)
        if progress is not None:
            progress(i, len(selected), name)
    return results
