"""Export utilities — sweep CSV, discrete CSV, and validation reports."""

from __future__ import annotations

import csv
import json
from datetime import date
from typing import Iterable, Optional, TextIO

from polsim import __version__
from polsim.dephasing import BASIS
from polsim.sweep import DiscreteRow, SweepRow
from polsim.validate import Check

BASE_COLUMNS = ["x", "tau_fs", "concurrence", "purity"]
DISCRETE_COLUMNS = ["tau_fs", "x", "concurrence", "purity", "residual"]
ELEMENT_COLUMNS = [
    f"{part}_rho_{row}_{col}"
    for i, row in enumerate(BASIS)
    for col in BASIS[i:]
    for part in ("re", "im")
]


def format_value(value: float) -> str:
    """17 significant digits: enough to round-trip a double."""
    return format(float(value), ".17g")


def sweep_header(*, emit_elements: bool = False, series: bool = False) -> list[str]:
    columns = list(BASE_COLUMNS)
    if emit_elements:
        columns += ELEMENT_COLUMNS
    if series:
        columns.insert(0, "series")
    return columns


# ── Sweep CSV ─────────────────────────────────────────────────────────

def write_sweep_csv(
    rows: Iterable[SweepRow],
    stream: TextIO,
    *,
    emit_elements: bool = False,
    series: Optional[str] = None,
    header: bool = True,
) -> None:
    """Write one curve; pass `series` to prefix every row with the curve name."""
    writer = csv.writer(stream, lineterminator="\n")
    if header:
        writer.writerow(sweep_header(emit_elements=emit_elements, series=series is not None))
    for r in rows:
        fields = [format_value(v) for v in (r.x, r.tau_fs, r.concurrence, r.purity)]
        if emit_elements:
            for _, _, value in r.matrix.upper_triangle():
                fields += [format_value(value.real), format_value(value.imag)]
        if series is not None:
            fields.insert(0, series)
        writer.writerow(fields)


def write_discrete_csv(rows: Iterable[DiscreteRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(DISCRETE_COLUMNS)
    for r in rows:
        writer.writerow(
            [format_value(v) for v in (r.tau_fs, r.x, r.concurrence, r.purity, r.residual)]
        )


# ── Validation Reports ────────────────────────────────────────────────

def report_dict(checks: list[Check]) -> dict:
    return {
        "version": __version__,
        "passed": all(c.passed for c in checks),
        "checks": [
            {
                "name": c.name,
                "description": c.description,
                "passed": c.passed,
                "detail": c.detail,
                "seconds": round(c.seconds, 3),
            }
            for c in checks
        ],
    }


def generate_report_json(checks: list[Check]) -> str:
    return json.dumps(report_dict(checks), indent=2)


def generate_report_md(checks: list[Check]) -> str:
    """Markdown table of check results."""
    passed = [c for c in checks if c.passed]
    lines = [
        f"# polsim validation — {date.today().isoformat()}",
        "",
        f"**{len(passed)}/{len(checks)} checks passed** (polsim {__version__})",
        "",
        "| Check | Result | Detail | Time |",
        "|-------|--------|--------|------|",
    ]
    for c in checks:
        result = "pass" if c.passed else "**FAIL**"
        detail = c.detail.replace("|", "\\|")
        lines.append(f"| {c.name} | {result} | {detail} | {c.seconds:.2f}s |")
    lines.append("")
    return "\n".join(lines)
