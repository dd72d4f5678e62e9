"""CLI entry point for polsim."""

from __future__ import annotations

import argparse
import contextlib
import sys
from typing import Iterator, Optional, TextIO

from polsim import __version__
from polsim.config import SweepSpec, load_config
from polsim.errors import ConfigError, DomainError, PolsimError
from polsim.dephasing import BASIS
from polsim.sweep import CurveSummary, SweepRow, run_discrete, run_sweep, summarize

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FAILURE = 3


def _progress(label: str, quiet: bool):
    """Return a `[i/n]` stderr progress callback, or None when quiet."""
    if quiet:
        return None

    def report(done: int, total: int) -> None:
        print(f"\r  [{done}/{total}] {label:<24}", end="", file=sys.stderr)
        if done == total:
            print(file=sys.stderr)

    return report


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", newline="", encoding="utf-8") as f:
        yield f
    print(f"  Saved {path}", file=sys.stderr)


def print_curve_table(summaries: list[tuple[CurveSummary, str]], title: str) -> None:
    """Rich table of per-curve results on stderr."""
    from rich.console import Console
    from rich.table import Table

    from polsim.theme import CYAN, MUTED, SURFACE, concurrence_text

    table = Table(title=title, border_style=SURFACE, title_style=f"bold {CYAN}")
    table.add_column("Curve", style=f"bold {CYAN}")
    table.add_column("Max C", justify="right")
    table.add_column("at x", justify="right", style=MUTED)
    table.add_column("First peak", justify="right")
    table.add_column("Final C", justify="right")
    table.add_column("Curve shape")
    for s, shape in summaries:
        peak = "—" if s.first_peak_x is None else f"{s.first_peak_concurrence:.4f} @ {s.first_peak_x:g}"
        table.add_row(
            s.label or "curve",
            concurrence_text(s.max_concurrence),
            f"{s.x_at_max:g}",
            peak,
            concurrence_text(s.final_concurrence),
            shape,
        )
    Console(stderr=True).print(table)


def _summaries(curves: list[tuple[SweepSpec, list[SweepRow]]]) -> list[tuple[CurveSummary, str]]:
    from polsim.theme import sparkline

    return [
        (summarize(rows, spec.label), sparkline([r.concurrence for r in rows]))
        for spec, rows in curves
    ]


# ── Commands ────────────────────────────────────────────────────────────

def cmd_sweep(args: argparse.Namespace) -> int:
    from polsim.export import write_sweep_csv

    spec = load_config(args.config)
    if spec.model == "discrete":
        raise ConfigError("model", "model = discrete belongs to the discrete command")
    rows = run_sweep(spec, progress=_progress(spec.label or spec.model, args.quiet))
    with _output(args.out) as out:
        write_sweep_csv(rows, out, emit_elements=spec.emit_elements)
    if not args.quiet:
        print_curve_table(_summaries([(spec, rows)]), "sweep")
    return EXIT_OK


def cmd_discrete(args: argparse.Namespace) -> int:
    from polsim.export import write_discrete_csv

    spec = load_config(args.config)
    rows = run_discrete(spec)
    with _output(args.out) as out:
        write_discrete_csv(rows, out)
    if not args.quiet:
        print(f"  {len(rows)} points, max C = {max(r.concurrence for r in rows):.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_preset(args: argparse.Namespace) -> int:
    from polsim.export import write_sweep_csv
    from polsim.presets import PRESET_NAMES, get_preset

    if args.list:
        for name in PRESET_NAMES:
            preset = get_preset(name)
            labels = ", ".join(c.label for c in preset.curves)
            print(f"{name}\t{preset.description}\t{labels}")
        return EXIT_OK
    if args.name is None:
        raise ConfigError("preset", "name a preset or pass --list")

    overrides = {}
    if args.conversion_lambda is not None:
        overrides["conversion_lambda_nm"] = args.conversion_lambda
    if args.elements:
        overrides["emit_elements"] = True
    preset = get_preset(args.name, **overrides)

    curves = []
    for curve in preset.curves:
        rows = run_sweep(curve, progress=_progress(f"{preset.name} {curve.label}", args.quiet))
        curves.append((curve, rows))
    with _output(args.out) as out:
        for i, (curve, rows) in enumerate(curves):
            write_sweep_csv(
                rows, out, emit_elements=curve.emit_elements, series=curve.label, header=i == 0
            )
    if not args.quiet:
        print_curve_table(_summaries(curves), f"{preset.name}: {preset.description}")
    return EXIT_OK


def _parse_pair(raw: str) -> tuple[str, str]:
    parts = tuple(p.strip().upper() for p in raw.split(","))
    if len(parts) != 2 or not set(parts) <= set(BASIS):
        raise argparse.ArgumentTypeError("expected ROW,COL such as HH,HV")
    return parts  # type: ignore[return-value]


def cmd_validate(args: argparse.Namespace) -> int:
    from polsim.export import generate_report_json, generate_report_md
    from polsim.validate import ValidationOptions, run_validation

    options = ValidationOptions(
        order=args.order,
        tol=args.tol,
        scheme=args.scheme,
        k=args.k,
        corrupt_element=args.corrupt_element,
    )

    def report(done: int, total: int, name: str) -> None:
        if not args.quiet:
            print(f"\r  [{done}/{total}] {name:<24}", end="", file=sys.stderr)
            if done == total:
                print(file=sys.stderr)

    if not args.quiet and not args.json_output:
        from rich.console import Console

        from polsim.theme import render_banner

        Console(stderr=True).print(render_banner())
    checks = run_validation(options, only=args.check, progress=report)

    if args.json_output:
        print(generate_report_json(checks))
    else:
        _print_checks(checks)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(generate_report_md(checks))
        print(f"  Saved {args.report}", file=sys.stderr)

    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILURE


def _print_checks(checks: list) -> None:
    from rich.console import Console
    from rich.table import Table

    from polsim.theme import CYAN, MUTED, SURFACE, status_text

    passed = sum(c.passed for c in checks)
    table = Table(
        title=f"validation: {passed}/{len(checks)} passed",
        border_style=SURFACE,
        title_style=f"bold {CYAN}",
    )
    table.add_column("Check", style=f"bold {CYAN}")
    table.add_column("Result")
    table.add_column("Detail", style=MUTED)
    table.add_column("Time", justify="right", style=MUTED)
    for c in checks:
        table.add_row(c.name, status_text(c.passed), c.detail, f"{c.seconds:.2f}s")
    Console().print(table)


# ── Entry Point ─────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polsim",
        description="Frequency-to-polarization entanglement transfer by dephasing and upconversion.",
    )
    parser.add_argument("--version", action="version", version=f"polsim {__version__}")
    parser.add_argument(
        "--quiet", action="store_true", help="Suppress progress and summaries on stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="Concurrence vs path difference from a config file")
    p.add_argument("--config", required=True, metavar="FILE", help="Flat key = value config")
    p.add_argument("--out", metavar="FILE", help="Write CSV here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("discrete", help="Ideal two-color protocol from a config file")
    p.add_argument("--config", required=True, metavar="FILE", help="Config with model = discrete")
    p.add_argument("--out", metavar="FILE", help="Write CSV here instead of stdout")
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("preset", help="Run a published parameter set")
    p.add_argument("name", nargs="?", choices=("fig3", "fig4", "fig5", "fig6"), help="Preset name")
    p.add_argument("--list", action="store_true", help="List presets and their curves")
    p.add_argument("--out", metavar="FILE", help="Write CSV here instead of stdout")
    p.add_argument(
        "--conversion-lambda",
        type=float,
        metavar="NM",
        help="Wavelength at which nm widths are converted (default: 2 x pump wavelength)",
    )
    p.add_argument("--elements", action="store_true", help="Emit density-matrix elements")
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("validate", help="Cross-check closed forms against quadrature")
    p.add_argument("--order", type=int, default=96, metavar="N", help="Quadrature nodes per axis")
    p.add_argument("--tol", type=float, default=1e-6, metavar="T", help="Relative element tolerance")
    p.add_argument("--scheme", choices=("gauss-legendre", "trapezoid"), default="gauss-legendre")
    p.add_argument("--k", type=float, metavar="K", help="Correlation coefficient for oracle curves")
    p.add_argument("--json", action="store_true", dest="json_output", help="Print a JSON report")
    p.add_argument("--report", metavar="FILE", help="Also save a markdown report")
    p.add_argument(
        "--check", action="append", metavar="NAME", help="Run only this check (repeatable)"
    )
    p.add_argument("--corrupt-element", type=_parse_pair, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """Entry point for the polsim CLI; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"polsim: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PolsimError as exc:
        print(f"polsim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
