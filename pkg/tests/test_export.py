"""Tests for the export module — sweep CSV, discrete CSV and validation reports."""

import csv
import io
import json

import pytest

from polsim.dephasing import PolarizationMatrix
from polsim.export import (
    BASE_COLUMNS,
    DISCRETE_COLUMNS,
    ELEMENT_COLUMNS,
    format_value,
    generate_report_json,
    generate_report_md,
    sweep_header,
    write_discrete_csv,
    write_sweep_csv,
)
from polsim.sweep import DiscreteRow, SweepRow
from polsim.validate import Check

BELL = PolarizationMatrix.from_vector([1, 0, 0, 1j])


def _rows(n: int = 3) -> list[SweepRow]:
    return [
        SweepRow(x=10.0 * i, tau_fs=1550.5 * i, concurrence=i / n, purity=1.0, matrix=BELL)
        for i in range(n)
    ]


def _checks(**overrides) -> list[Check]:
    checks = [
        Check("bell-anchor", "Bell state at tau_d", passed=True, detail="C = 1", seconds=0.1234),
        Check("oracle-agreement", "closed forms vs quadrature", passed=True,
              detail="max relative error 1e-9 | ok", seconds=2.5),
    ]
    for key, value in overrides.items():
        setattr(checks[1], key, value)
    return checks


def _parse(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


# --- Columns ---

def test_element_columns_cover_upper_triangle():
    assert len(ELEMENT_COLUMNS) == 20
    assert ELEMENT_COLUMNS[:4] == ["re_rho_HH_HH", "im_rho_HH_HH", "re_rho_HH_HV", "im_rho_HH_HV"]
    assert ELEMENT_COLUMNS[-2:] == ["re_rho_VV_VV", "im_rho_VV_VV"]


def test_header_variants():
    assert sweep_header() == BASE_COLUMNS
    assert sweep_header(emit_elements=True) == BASE_COLUMNS + ELEMENT_COLUMNS
    assert sweep_header(series=True)[0] == "series"


def test_format_value_round_trips():
    for value in (0.1, 1 / 3, 1e-300, 40313.600000000006):
        assert float(format_value(value)) == value


# --- Sweep CSV ---

def test_sweep_csv_basic():
    out = io.StringIO()
    write_sweep_csv(_rows(), out)
    table = _parse(out.getvalue())
    assert table[0] == BASE_COLUMNS
    assert len(table) == 4
    assert [float(v) for v in table[2]] == [10.0, 1550.5, 1 / 3, 1.0]


def test_sweep_csv_uses_unix_newlines():
    out = io.StringIO()
    write_sweep_csv(_rows(2), out)
    assert "\r" not in out.getvalue()
    assert out.getvalue().endswith("\n")


def test_sweep_csv_with_elements():
    out = io.StringIO()
    write_sweep_csv(_rows(1), out, emit_elements=True)
    header, row = _parse(out.getvalue())
    values = dict(zip(header, row))
    assert float(values["re_rho_HH_HH"]) == pytest.approx(0.5)
    assert float(values["im_rho_HH_VV"]) == pytest.approx(-0.5)
    assert float(values["re_rho_HV_HV"]) == 0.0


def test_sweep_csv_series_without_header():
    out = io.StringIO()
    write_sweep_csv(_rows(2), out, series="fig3/fwhm=0.5nm", header=False)
    table = _parse(out.getvalue())
    assert len(table) == 2
    assert all(r[0] == "fig3/fwhm=0.5nm" for r in table)


# --- Discrete CSV ---

def test_discrete_csv():
    rows = [
        DiscreteRow(tau_fs=0.0, x=0.0, concurrence=0.0, purity=1.0, residual=0.5, matrix=BELL),
        DiscreteRow(tau_fs=40313.6, x=260.0, concurrence=1.0, purity=1.0, residual=1e-17, matrix=BELL),
    ]
    out = io.StringIO()
    write_discrete_csv(rows, out)
    table = _parse(out.getvalue())
    assert table[0] == DISCRETE_COLUMNS
    assert float(table[2][DISCRETE_COLUMNS.index("x")]) == 260.0
    assert float(table[2][DISCRETE_COLUMNS.index("residual")]) == 1e-17


# --- Reports ---

def test_report_json():
    data = json.loads(generate_report_json(_checks()))
    assert data["passed"] is True
    assert [c["name"] for c in data["checks"]] == ["bell-anchor", "oracle-agreement"]
    assert data["checks"][0]["seconds"] == 0.123


def test_report_json_failure():
    data = json.loads(generate_report_json(_checks(passed=False)))
    assert data["passed"] is False


def test_report_md_contains_table():
    md = generate_report_md(_checks())
    assert "**2/2 checks passed**" in md
    assert "| bell-anchor | pass |" in md
    assert "1e-9 \\| ok" in md


def test_report_md_marks_failures():
    md = generate_report_md(_checks(passed=False, detail="max relative error 1e-3 at element HH,HV"))
    assert "**1/2 checks passed**" in md
    assert "**FAIL**" in md
    assert "HH,HV" in md


def test_report_md_empty():
    md = generate_report_md([])
    assert "**0/0 checks passed**" in md
