"""Tests for the closed-form dephased and erased polarization states."""

import math
import warnings

import numpy as np
import pytest

from polsim.dephasing import (
    BASIS,
    PolarizationMatrix,
    closed_form_element,
    density_matrix,
    dephasing_phase,
    unerased_density_matrix,
    unerased_element,
)
from polsim.discrete import critical_times
from polsim.entanglement import concurrence
from polsim.errors import DomainError, InvalidStateError, SeparationWarning, UnsupportedVariantError
from polsim.presets import PRESET_NAMES, get_preset
from polsim.spectra import DiscretePair, DoublePeak, Medium, SinglePeak

QUARTZ = Medium(1.51004, 1.54360)


def _fig3(k: float = -1.0) -> DoublePeak:
    curve = get_preset("fig3").curves[2]  # FWHM 0.5 nm
    spectrum = curve.spectrum()
    return DoublePeak(spectrum.omega1, spectrum.omega2, spectrum.delta, k)


def _tau_d(spectrum: DoublePeak, m: int = 0) -> float:
    return critical_times(spectrum.omega1, spectrum.omega2, QUARTZ, m)[1]


# --- Phases ---

def test_phase_is_one_at_zero_time():
    assert dephasing_phase("H", "V", 1.2, 1.21, 0.0, QUARTZ) == 1


def test_phase_hh():
    tau, wa, wb = 1234.5, 1.2, 1.21
    expected = np.exp(1j * tau * QUARTZ.n_h * (wa + wb))
    assert dephasing_phase("H", "H", wa, wb, tau, QUARTZ) == pytest.approx(expected, abs=1e-12)


def test_phase_has_unit_modulus():
    wa = np.linspace(1.1, 1.3, 11)
    phase = dephasing_phase("V", "H", wa, wa[::-1], 5.0e4, QUARTZ)
    np.testing.assert_allclose(np.abs(phase), 1.0, rtol=1e-14)


def test_phase_rejects_negative_time():
    with pytest.raises(DomainError):
        dephasing_phase("H", "H", 1.2, 1.2, -1.0, QUARTZ)


# --- Closed-form elements ---

@pytest.mark.parametrize("row", BASIS)
@pytest.mark.parametrize("col", BASIS)
def test_every_element_is_two_at_zero_time(row, col):
    assert closed_form_element(row, col, 0.0, _fig3(-0.99), QUARTZ) == pytest.approx(2.0, abs=1e-15)


@pytest.mark.parametrize("tau", [0.0, 1.0e3, 4.0e4, 3.0e5])
def test_full_anticorrelation_keeps_hh_population(tau):
    spectrum = _fig3(-1.0)
    assert closed_form_element("HH", "HH", tau, spectrum, QUARTZ) == 2.0
    assert closed_form_element("VV", "VV", tau, spectrum, QUARTZ) == 2.0
    assert abs(closed_form_element("HH", "VV", tau, spectrum, QUARTZ)) == pytest.approx(2.0, abs=1e-12)


def test_forced_zeros_at_destructive_time():
    spectrum = _fig3(-1.0)
    tau = _tau_d(spectrum)
    assert abs(closed_form_element("HV", "HV", tau, spectrum, QUARTZ)) < 1e-12
    assert abs(closed_form_element("HH", "HV", tau, spectrum, QUARTZ)) < 1e-12
    assert abs(closed_form_element("VH", "VV", tau, spectrum, QUARTZ)) < 1e-12


def test_lower_triangle_is_conjugate():
    spectrum = _fig3(-0.99)
    for i, row in enumerate(BASIS):
        for col in BASIS[i + 1:]:
            upper = closed_form_element(row, col, 2.2e4, spectrum, QUARTZ)
            lower = closed_form_element(col, row, 2.2e4, spectrum, QUARTZ)
            assert lower == upper.conjugate()


def test_hv_population_follows_fringe():
    spectrum = _fig3(-0.999)
    beat = QUARTZ.delta_n * spectrum.separation
    q = 2 * (QUARTZ.n_h**2 - 2 * 0.999 * QUARTZ.n_h * QUARTZ.n_v + QUARTZ.n_v**2)
    for tau in np.linspace(0.0, 1.0e5, 9):
        value = closed_form_element("HV", "HV", tau, spectrum, QUARTZ)
        expected = (1 + math.cos(tau * beat)) * math.exp(-q * (tau * spectrum.delta) ** 2)
        assert value.real == pytest.approx(expected, rel=1e-10, abs=1e-300)
        assert value.imag == 0.0


def test_closed_form_rejects_discrete_pair():
    with pytest.raises(UnsupportedVariantError):
        closed_form_element("HH", "HH", 1.0, DiscretePair(1.2, 1.21), QUARTZ)


def test_closed_form_rejects_unknown_pair():
    with pytest.raises(DomainError):
        closed_form_element("HX", "HH", 1.0, _fig3(), QUARTZ)


# --- Density matrices ---

def test_zero_time_is_product_state():
    rho = density_matrix(0.0, _fig3(-0.9), QUARTZ)
    np.testing.assert_allclose(rho.entries, np.full((4, 4), 0.25), atol=1e-15)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_bell_state_at_destructive_times(m):
    spectrum = _fig3(-1.0)
    rho = density_matrix(_tau_d(spectrum, m), spectrum, QUARTZ)
    assert rho["HH", "HH"].real == pytest.approx(0.5, abs=1e-12)
    assert rho["VV", "VV"].real == pytest.approx(0.5, abs=1e-12)
    assert abs(rho["HH", "VV"]) == pytest.approx(0.5, abs=1e-12)
    hv = rho.entries[1:3, :]
    assert np.max(np.abs(hv)) < 1e-12
    assert concurrence(rho) == pytest.approx(1.0, abs=1e-12)


def test_single_peak_full_anticorrelation_approaches_bell_state():
    spectrum = SinglePeak(2.4149, 1.6e-4, -1.0)
    taus = np.linspace(0.0, 210.0 / spectrum.delta, 50)
    values = [concurrence(density_matrix(t, spectrum, QUARTZ)) for t in taus]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert values[-1] > 0.999999


def test_single_peak_concurrence_formula():
    spectrum = SinglePeak(2.4149, 1.6e-4, -1.0)
    tau = 25.0 / spectrum.delta
    a = math.exp(-(QUARTZ.delta_n**2) * (tau * spectrum.delta) ** 2)
    expected = (1 - a * a) / (1 + a * a)
    assert concurrence(density_matrix(tau, spectrum, QUARTZ)) == pytest.approx(expected, abs=1e-10)


def test_strong_decay_does_not_underflow():
    spectrum = SinglePeak(2.4149, 1.6e-4, 0.0)
    rho = density_matrix(1.0e3 / spectrum.delta, spectrum, QUARTZ)
    assert rho.trace == pytest.approx(1.0, abs=1e-12)
    assert rho["HH", "HH"].real == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_preset_states_are_valid(name):
    for curve in get_preset(name).curves:
        spectrum = curve.spectrum()
        medium = curve.medium()
        for tau in np.linspace(0.0, 3.0e5, 25):
            rho = density_matrix(tau, spectrum, medium)
            assert rho.hermiticity_error <= 1e-12
            assert rho.trace == pytest.approx(1.0, abs=1e-12)
            assert rho.eigenvalues()[0] >= -1e-10


@pytest.mark.parametrize("seed", range(20))
def test_coincident_peaks_match_single_peak(seed):
    rng = np.random.default_rng(seed)
    omega0 = rng.uniform(1.0, 4.0)
    delta = rng.uniform(1e-4, 5e-3)
    k = rng.uniform(-1.0, 1.0)
    tau = rng.uniform(0.0, 3.0) / delta
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeparationWarning)
        double = DoublePeak(omega0 / 2, omega0 / 2, delta, k)
    single = density_matrix(tau, SinglePeak(omega0, delta, k), QUARTZ)
    np.testing.assert_allclose(
        density_matrix(tau, double, QUARTZ).entries, single.entries, rtol=0, atol=1e-12
    )


# --- PolarizationMatrix ---

def test_polarization_matrix_from_vector():
    rho = PolarizationMatrix.from_vector([1, 0, 0, 1j])
    assert rho["HH", "VV"] == pytest.approx(-0.5j)
    rho.validate()


def test_polarization_matrix_is_read_only():
    rho = PolarizationMatrix(np.eye(4) / 4)
    with pytest.raises(ValueError):
        rho.entries[0, 0] = 1.0


@pytest.mark.parametrize(
    "entries",
    [
        np.diag([0.5, 0.5, 0.5, 0.5]),
        np.diag([0.7, 0.4, 0.0, -0.1]),
        np.array([[0.5, 0.1, 0, 0], [0.0, 0.5, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]),
    ],
)
def test_invalid_states_rejected(entries):
    with pytest.raises(InvalidStateError):
        PolarizationMatrix(entries).validate()


def test_wrong_shape_rejected():
    with pytest.raises(InvalidStateError):
        PolarizationMatrix(np.eye(2))


def test_upper_triangle_has_ten_elements():
    assert len(list(PolarizationMatrix(np.eye(4) / 4).upper_triangle())) == 10


# --- Without erasure ---

def test_unerased_diagonals_are_two():
    for pair in BASIS:
        assert unerased_element(pair, pair, 3.0e4, _fig3(-0.99), QUARTZ) == pytest.approx(2.0)


@pytest.mark.parametrize(
    "spectrum",
    [
        SinglePeak(2.4149, 1.6e-4, -1.0),
        SinglePeak(2.4149, 1.6e-4, -0.5),
        DoublePeak.around(2.4149, 2.3e-3, 1.6e-4, -1.0),
        DiscretePair(1.2063, 1.2086),
    ],
)
def test_dephasing_alone_never_entangles(spectrum):
    for tau in np.linspace(0.0, 2.0e5, 21):
        rho = unerased_density_matrix(tau, spectrum, QUARTZ)
        assert concurrence(rho) < 1e-9


def test_unerased_zero_time_is_product_state():
    rho = unerased_density_matrix(0.0, DiscretePair(1.2063, 1.2086), QUARTZ)
    np.testing.assert_allclose(rho.entries, np.full((4, 4), 0.25), atol=1e-15)
