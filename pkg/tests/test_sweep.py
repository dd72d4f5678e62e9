"""Tests for the sweep engine and the published curve shapes."""

import dataclasses

import pytest

from polsim.config import SweepSpec
from polsim.discrete import critical_times
from polsim.errors import ConfigError
from polsim.presets import PRESET_NAMES, get_preset
from polsim.sweep import (
    SweepRow,
    discrete_taus,
    evaluate_point,
    run_discrete,
    run_sweep,
    summarize,
)

SMALL = SweepSpec(model="double_peak", separation_nm=3.0, x_max=400.0, x_steps=81)


def _curves(name: str, **overrides) -> list[list[SweepRow]]:
    return [run_sweep(c) for c in get_preset(name, **overrides).curves]


# --- Engine ---

def test_rows_come_back_in_ascending_x():
    rows = run_sweep(SMALL)
    xs = [r.x for r in rows]
    assert xs == sorted(xs)
    assert len(rows) == 81
    assert xs[0] == 0.0 and xs[-1] == 400.0


def test_worker_count_does_not_change_results():
    serial = run_sweep(dataclasses.replace(SMALL, workers=1))
    parallel = run_sweep(dataclasses.replace(SMALL, workers=4))
    assert [r.concurrence for r in serial] == [r.concurrence for r in parallel]
    assert [r.tau_fs for r in serial] == [r.tau_fs for r in parallel]


def test_progress_reports_every_point():
    calls = []
    run_sweep(SMALL, progress=lambda done, total: calls.append((done, total)))
    assert len(calls) == 81
    assert calls[-1] == (81, 81)


def test_discrete_model_needs_discrete_command():
    with pytest.raises(ConfigError):
        run_sweep(SweepSpec(model="discrete", separation_nm=3.0))


def test_evaluate_point_at_zero_is_product_state():
    row = evaluate_point(0.0, SMALL.spectrum(), SMALL.medium(), SMALL.units())
    assert row.tau_fs == 0.0
    assert row.concurrence == pytest.approx(0.0, abs=1e-9)
    assert row.purity == pytest.approx(1.0, abs=1e-12)


# --- Summaries ---

def _row(x: float, c: float) -> SweepRow:
    return SweepRow(x=x, tau_fs=x, concurrence=c, purity=1.0, matrix=None)  # type: ignore[arg-type]


def test_summarize_finds_first_local_maximum():
    rows = [_row(x, c) for x, c in enumerate([0.0, 0.3, 0.6, 0.5, 0.9, 0.2])]
    s = summarize(rows, "demo")
    assert s.label == "demo"
    assert s.points == 6
    assert (s.first_peak_x, s.first_peak_concurrence) == (2, 0.6)
    assert (s.x_at_max, s.max_concurrence) == (4, 0.9)
    assert s.final_concurrence == 0.2


def test_summarize_flat_plateau_peak():
    rows = [_row(x, c) for x, c in enumerate([0.0, 0.4, 0.4, 0.1])]
    assert summarize(rows).first_peak_x == 2


def test_summarize_monotone_curve_has_no_first_peak():
    rows = [_row(x, c) for x, c in enumerate([0.0, 0.1, 0.2, 0.3])]
    s = summarize(rows)
    assert s.first_peak_x is None
    assert s.max_concurrence == 0.3


def test_summarize_empty():
    s = summarize([])
    assert s.points == 0
    assert s.first_peak_x is None


# --- Published curves ---

def test_double_peak_anticorrelated_first_peak_at_260():
    for rows in _curves("fig3"):
        s = summarize(rows)
        assert s.first_peak_x == pytest.approx(260.0, abs=0.5)
        assert s.first_peak_concurrence == pytest.approx(1.0, abs=1e-9)


def test_first_peak_drops_as_correlation_weakens():
    peaks = []
    for rows in _curves("fig4"):
        s = summarize(rows)
        peaks.append(s.first_peak_concurrence if s.first_peak_concurrence is not None else s.max_concurrence)
    assert peaks[0] > peaks[1] > peaks[2]


def test_long_path_limits_at_pump_wavelength_widths():
    far = 2000.0
    for curve in get_preset("fig3", conversion_lambda_nm=780.0).curves:
        row = evaluate_point(far, curve.spectrum(), curve.medium(), curve.units())
        assert row.concurrence >= 0.999
    for curve in get_preset("fig4", conversion_lambda_nm=780.0).curves:
        row = evaluate_point(far, curve.spectrum(), curve.medium(), curve.units())
        assert row.concurrence <= 0.01


def test_single_peak_anticorrelated_rises_monotonically():
    curves = _curves("fig5")
    for rows in curves:
        values = [r.concurrence for r in rows]
        assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))
    for narrow, wide in zip(curves, curves[1:]):
        assert all(w.concurrence >= n.concurrence - 1e-12 for n, w in zip(narrow, wide))


def test_single_peak_maximum_independent_of_width():
    maxima = [summarize(rows).max_concurrence for rows in _curves("fig6")]
    assert max(maxima) - min(maxima) <= 5e-3


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_every_preset_state_is_valid(name):
    for rows in _curves(name):
        for row in rows:
            row.matrix.validate()
            assert 0.0 <= row.concurrence <= 1.0
            assert 0.25 - 1e-12 <= row.purity <= 1.0 + 1e-12


# --- Discrete runs ---

DISCRETE = SweepSpec(model="discrete", separation_nm=3.0)


def test_discrete_destructive_times():
    spec = dataclasses.replace(DISCRETE, critical="tau_d", m=(0, 1, 2))
    rows = run_discrete(spec.validate())
    assert [r.x for r in rows] == pytest.approx([260.0, 780.0, 1300.0], rel=1e-9)
    for r in rows:
        assert r.concurrence == pytest.approx(1.0, abs=1e-12)
        assert r.residual <= 1e-12


def test_discrete_constructive_times():
    spec = dataclasses.replace(DISCRETE, critical="tau_c", m=(0, 1))
    rows = run_discrete(spec.validate())
    assert rows[0].tau_fs == 0.0
    assert all(r.concurrence <= 1e-9 for r in rows)


def test_discrete_taus_sources():
    assert discrete_taus(dataclasses.replace(DISCRETE, taus_fs=(5.0, 1.0))) == [5.0, 1.0]
    grid = discrete_taus(dataclasses.replace(DISCRETE, x_max=10.0, x_steps=3))
    assert len(grid) == 3 and grid[0] == 0.0
    pair = DISCRETE.spectrum()
    _, tau_d = critical_times(pair.omega1, pair.omega2, DISCRETE.medium(), 0)
    assert discrete_taus(dataclasses.replace(DISCRETE, critical="tau_d")) == [tau_d]


def test_discrete_run_needs_discrete_model():
    with pytest.raises(ConfigError):
        run_discrete(SMALL)


def test_discrete_grid_spans_one_period():
    spec = dataclasses.replace(DISCRETE, x_max=520.0, x_steps=521).validate()
    values = [r.concurrence for r in run_discrete(spec)]
    assert max(values) == pytest.approx(1.0, abs=1e-9)
    assert values[260] == pytest.approx(1.0, abs=1e-9)
    assert values[0] <= 1e-9 and values[-1] <= 1e-9
    for a, b in zip(values, reversed(values)):
        assert a == pytest.approx(b, abs=1e-9)
