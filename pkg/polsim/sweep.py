"""Sweep engine — evaluate concurrence curves over the path-difference grid."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Optional

from polsim.config import SweepSpec
from polsim.dephasing import PolarizationMatrix, density_matrix
from polsim.discrete import cancellation_residual, critical_times, evolve_discrete, ideal_upconvert
from polsim.entanglement import concurrence, purity
from polsim.errors import ConfigError
from polsim.spectra import DiscretePair, JointSpectrum, Medium
from polsim.units import UnitContext, path_difference_to_time, time_to_path_difference

Progress = Callable[[int, int], None]


@dataclass
class SweepRow:
    x: float
    tau_fs: float
    concurrence: float
    purity: float
    matrix: PolarizationMatrix


@dataclass
class DiscreteRow:
    tau_fs: float
    x: float
    concurrence: float
    purity: float
    residual: float      # HV/VH amplitude left after upconversion
    matrix: PolarizationMatrix


@dataclass
class CurveSummary:
    label: str
    points: int
    max_concurrence: float
    x_at_max: float
    final_concurrence: float
    first_peak_x: Optional[float] = None
    first_peak_concurrence: Optional[float] = None


def evaluate_point(
    x: float, spectrum: JointSpectrum, medium: Medium, ctx: UnitContext
) -> SweepRow:
    tau = path_difference_to_time(x, medium, ctx)
    rho = density_matrix(tau, spectrum, medium)
    return SweepRow(x=x, tau_fs=tau, concurrence=concurrence(rho), purity=purity(rho), matrix=rho)


def run_sweep(spec: SweepSpec, progress: Optional[Progress] = None) -> list[SweepRow]:
    """Evaluate every grid point; rows come back in ascending x whatever the scheduling."""
    if spec.model == "discrete":
        raise ConfigError("model", "use the discrete command for model = discrete")
    spectrum = spec.spectrum()
    medium = spec.medium()
    ctx = spec.units()
    xs = [float(x) for x in spec.x_grid()]

    rows: list[Optional[SweepRow]] = [None] * len(xs)
    with ThreadPoolExecutor(max_workers=spec.workers) as executor:
        futures = {
            executor.submit(evaluate_point, x, spectrum, medium, ctx): i
            for i, x in enumerate(xs)
        }
        for done, future in enumerate(as_completed(futures), 1):
            rows[futures[future]] = future.result()
            if progress is not None:
                progress(done, len(xs))
    return [r for r in rows if r is not None]


def discrete_taus(spec: SweepSpec) -> list[float]:
    """Interaction times requested by a discrete config: explicit list, critical times or x grid."""
    medium = spec.medium()
    if spec.taus_fs:
        return list(spec.taus_fs)
    spectrum = spec.spectrum()
    if spec.critical is not None:
        assert isinstance(spectrum, DiscretePair)
        pick = 0 if spec.critical == "tau_c" else 1
        return [critical_times(spectrum.omega1, spectrum.omega2, medium, m)[pick] for m in spec.m or (0,)]
    ctx = spec.units()
    return [path_difference_to_time(float(x), medium, ctx) for x in spec.x_grid()]


def run_discrete(spec: SweepSpec) -> list[DiscreteRow]:
    if spec.model != "discrete":
        raise ConfigError("model", f"discrete command needs model = discrete, got {spec.model}")
    spectrum = spec.spectrum()
    assert isinstance(spectrum, DiscretePair)
    medium = spec.medium()
    ctx = spec.units()
    rows = []
    for tau in discrete_taus(spec):
        state = evolve_discrete(tau, spectrum.omega1, spectrum.omega2, medium)
        rho = ideal_upconvert(state)
        rows.append(
            DiscreteRow(
                tau_fs=tau,
                x=time_to_path_difference(tau, medium, ctx),
                concurrence=concurrence(rho),
                purity=purity(rho),
                residual=cancellation_residual(state),
                matrix=rho,
            )
        )
    return rows


def summarize(rows: list[SweepRow], label: str = "") -> CurveSummary:
    """Maximum, first local maximum and final value of one concurrence curve."""
    if not rows:
        return CurveSummary(label=label, points=0, max_concurrence=0.0, x_at_max=0.0,
                            final_concurrence=0.0)
    values = [r.concurrence for r in rows]
    best = max(range(len(values)), key=values.__getitem__)
    summary = CurveSummary(
        label=label,
        points=len(rows),
        max_concurrence=values[best],
        x_at_max=rows[best].x,
        final_concurrence=values[-1],
    )
    for i in range(1, len(values) - 1):
        if values[i] > 0 and values[i] >= values[i - 1] and values[i] > values[i + 1]:
            summary.first_peak_x = rows[i].x
            summary.first_peak_concurrence = values[i]
            break
    return summary
