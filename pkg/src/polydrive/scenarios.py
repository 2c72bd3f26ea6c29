"""Named presets reproducing each figure and the feasibility run.

Time ranges are our choice (the source figures do not state them): the
two-level and Lambda panels use Omega*t in [0, 30], the entanglement panels
[0, 15], the feasibility run t in [0, 150] microseconds.  Where a panel's
parameter is an assumption rather than a stated value it is flagged in the
scenario's `assumptions`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import analytic
from .drive import DriveParams
from .dynamics import IntegratorConfig, integrate_lindblad, integrate_schrodinger, population_series
from .errors import IntegrationError, UnknownScenarioError, ValidationError
from .linalg import DensityMatrix, StateVector
from .models import RydbergParams, effective_w_model, lambda_model, rydberg_model, two_level_model

KINDS = ("two_level", "rydberg", "effective_w", "lambda")


@dataclass(frozen=True)
class Scenario:
    id: str
    kind: str
    drives: tuple  # ((curve label, DriveParams), ...); label "" for a single curve
    gamma: float
    interaction: float | None
    atoms: int
    t_start: float
    t_stop: float
    samples: int
    time_unit: str  # "Omega_t" or "us"
    observables: tuple
    with_analytic: bool = True
    with_baseline: bool = False
    with_effective: bool = False
    assumptions: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown model kind {self.kind!r}")
        if self.samples < 2:
            raise ValidationError("samples must be >= 2")
        if not self.t_stop > self.t_start:
            raise ValidationError("t_stop must exceed t_start")
        if not self.drives:
            raise ValidationError("scenario needs at least one drive curve")


@dataclass(frozen=True)
class ScanSpec:
    base: Scenario
    axis: str  # "U" | "N" | "gamma"
    values: tuple
    reduction: str  # "plateau_mean" | "max" | "final"
    metric: str  # column name, or "blockade_gap"

    def __post_init__(self):
        if self.axis not in ("U", "N", "gamma"):
            raise ValidationError(f"unrecognized scan axis {self.axis!r}")
        if not self.values:
            raise ValidationError("scan values must be non-empty")
        if self.reduction not in ("plateau_mean", "max", "final"):
            raise ValidationError(f"unrecognized reduction {self.reduction!r}")


@dataclass(frozen=True)
class ScanPoint:
    value: float
    metric: float | None
    error: str | None = None


@dataclass
class ScenarioResult:
    scenario: Scenario
    times: np.ndarray
    columns: dict  # name -> np.ndarray, insertion-ordered
    metadata: dict


def _ratio(p, q=1):
    return Fraction(p, q)


def _fig1(sid, pairs, drives, gamma=0.0, delta=0.0, assumptions=()):
    return Scenario(
        id=sid,
        kind="two_level",
        drives=tuple(
            (lab, DriveParams(1.0, r, pairs=n, central_detuning=delta)) for lab, r, n in drives
        ),
        gamma=gamma,
        interaction=None,
        atoms=1,
        t_start=0.0,
        t_stop=30.0,
        samples=3001,
        time_unit="Omega_t",
        observables=("e",),
        with_analytic=(delta == 0.0),
        with_baseline=True,
        assumptions=tuple(assumptions),
    )


def _fig2(sid, atoms, ratio):
    obs = "T" if atoms == 2 else "W"
    return Scenario(
        id=sid,
        kind="rydberg",
        drives=(("", DriveParams(1.0, ratio, scale_root=atoms, pairs=10)),),
        gamma=0.0,
        interaction=400.0,
        atoms=atoms,
        t_start=0.0,
        t_stop=15.0,
        samples=3001,
        time_unit="Omega_t",
        observables=(obs,),
        with_analytic=True,
    )


def _fig3(sid, ratio, gamma, assumptions=()):
    return Scenario(
        id=sid,
        kind="lambda",
        drives=(("", DriveParams(1.0, ratio, scale_root=2, pairs=10)),),
        gamma=gamma,
        interaction=None,
        atoms=1,
        t_start=0.0,
        t_stop=30.0,
        samples=3001,
        time_unit="Omega_t",
        observables=("e", "r"),
        with_analytic=True,
        with_baseline=True,
        assumptions=tuple(assumptions),
    )


def _builtins() -> dict:
    scenarios = [
        _fig1("fig1a", 2, (("d2", _ratio(1), 2), ("d2_3", _ratio(3), 2))),
        _fig1("fig1b", 10, (("d2", _ratio(1), 10), ("d2_3", _ratio(3), 10))),
        _fig1("fig1c", 2, (("d6", _ratio(1, 3), 2),),
              assumptions=("spacing Delta=6*Omega chosen for the window-stabilized panel",)),
        _fig1("fig1d", 10, (("n2", _ratio(1), 2), ("n10", _ratio(1), 10)), delta=10.0),
        _fig1("fig1e", 2, (("d2", _ratio(1), 2), ("d6", _ratio(1, 3), 2)), gamma=0.1),
        _fig2("fig2a", 2, _ratio(1)),
        _fig2("fig2b", 2, _ratio(1, 3)),
        _fig2("fig2c", 3, _ratio(1)),
        _fig2("fig2d", 5, _ratio(1)),
        # Lambda ratio convention: sqrt(2) Omega / Delta = (2j+1)/(2k+1);
        # stored as r = 2 sqrt(2) Omega / Delta = 2 and 2/3 respectively.
        _fig3("fig3a", _ratio(2), 0.0),
        _fig3("fig3b", _ratio(2, 3), 0.0),
        _fig3("fig3c", _ratio(2), 0.1,
              assumptions=("dissipation gamma=0.1*Omega mirrors the two-level dissipative panel",)),
        _fig3("fig3d", _ratio(2, 3), 0.1,
              assumptions=("dissipation gamma=0.1*Omega mirrors the two-level dissipative panel",)),
        Scenario(
            id="feasibility",
            kind="rydberg",
            drives=(("", DriveParams(2.0 * math.pi, _ratio(1), scale_root=2, pairs=4)),),
            gamma=2.0 * math.pi * 0.001,
            interaction=400.0 * 2.0 * math.pi,
            atoms=2,
            t_start=0.0,
            t_stop=150.0,
            samples=3001,
            time_unit="us",
            observables=("T",),
            with_analytic=True,
        ),
    ]
    return {s.id: s for s in scenarios}


BUILTIN_IDS = tuple(_builtins().keys())


def builtin(scenario_id: str) -> Scenario:
    """Look up a builtin scenario by id."""
    table = _builtins()
    if scenario_id not in table:
        raise UnknownScenarioError(scenario_id, table.keys())
    return table[scenario_id]


def _build_model(kind, drive, gamma, interaction, atoms):
    if kind == "two_level":
        return two_level_model(drive, gamma)
    if kind == "rydberg":
        return rydberg_model(RydbergParams(drive, atoms, interaction), gamma)
    if kind == "effective_w":
        if gamma > 0:
            raise ValidationError("the blockade-effective model has no collapse channels")
        return effective_w_model(drive, atoms)
    return lambda_model(drive, gamma)


def _initial_label(kind, model):
    if kind == "rydberg":
        return "g" * int(math.log2(model.dim))
    if kind == "effective_w":
        return "G"
    return "g"


def _run_curve(kind, drive, gamma, interaction, atoms, grid, cfg):
    model = _build_model(kind, drive, gamma, interaction, atoms)
    init = StateVector.basis_state(model.basis_labels, _initial_label(kind, model))
    if model.channels:
        traj = integrate_lindblad(model, DensityMatrix.from_state(init), grid, cfg)
    else:
        traj = integrate_schrodinger(model, init, grid, cfg)
    return traj


def _analytic_series(kind, obs, drive, atoms, grid):
    if kind == "two_level" and obs == "e":
        return analytic.two_level(grid, drive).pe
    if kind in ("rydberg", "effective_w") and obs in ("T", "W"):
        return analytic.w_population(grid, drive, atoms)
    if kind == "lambda":
        pops = analytic.lambda_populations(grid, drive)
        return {"g": pops.pg, "e": pops.pe, "r": pops.pr}[obs]
    return None


def _colname(obs, label, variant):
    mid = f"_{label}" if label else ""
    return f"pop_{obs}{mid}_{variant}"


def run(scenario: Scenario, cfg: IntegratorConfig | None = None) -> ScenarioResult:
    """Integrate every curve of a scenario on one shared time grid."""
    cfg = cfg or IntegratorConfig()
    grid = np.linspace(scenario.t_start, scenario.t_stop, scenario.samples)
    columns = {}
    diagnostics = {}
    for label, drive in scenario.drives:
        try:
            traj = _run_curve(
                scenario.kind, drive, scenario.gamma, scenario.interaction, scenario.atoms, grid, cfg
            )
        except IntegrationError as exc:
            raise IntegrationError(f"curve {label or scenario.id!r}: {exc}") from exc
        diagnostics[label or "curve"] = traj.diagnostics
        for obs in scenario.observables:
            columns[_colname(obs, label, "numeric")] = population_series(traj, obs)
            if scenario.with_analytic:
                series = _analytic_series(scenario.kind, obs, drive, scenario.atoms, grid)
                if series is not None:
                    columns[_colname(obs, label, "analytic")] = np.asarray(series)
        if scenario.with_effective and scenario.kind == "rydberg":
            eff = _run_curve("effective_w", drive, 0.0, None, scenario.atoms, grid, cfg)
            diagnostics[(label or "curve") + "_effective"] = eff.diagnostics
            for obs in scenario.observables:
                columns[_colname(obs, label, "effective")] = population_series(eff, "W")
    if scenario.with_baseline:
        for label, drive in scenario.drives[:1]:
            base_drive = dataclasses.replace(drive, pairs=0)
            traj = _run_curve(
                scenario.kind, base_drive, scenario.gamma, scenario.interaction, scenario.atoms, grid, cfg
            )
            diagnostics["baseline"] = traj.diagnostics
            for obs in scenario.observables:
                columns[f"pop_{obs}_baseline"] = population_series(traj, obs)
    drives_meta = {
        (label or "curve"): {
            "rabi": d.rabi,
            "ratio": f"{d.ratio.numerator}/{d.ratio.denominator}",
            "scale_root": d.scale_root,
            "pairs": d.pairs,
            "central_detuning": d.central_detuning,
            "spacing": d.spacing,
        }
        for label, d in scenario.drives
    }
    metadata = {
        "scenario": scenario.id,
        "kind": scenario.kind,
        "gamma": scenario.gamma,
        "interaction": scenario.interaction,
        "atoms": scenario.atoms,
        "time_unit": scenario.time_unit,
        "rel_tol": cfg.rel_tol,
        "abs_tol": cfg.abs_tol,
        "drives": drives_meta,
        "assumptions": list(scenario.assumptions),
        "diagnostics": diagnostics,
    }
    return ScenarioResult(scenario=scenario, times=grid, columns=columns, metadata=metadata)


def _plateau_mean(times, series, drive) -> float:
    """Mean over the interiors of the 2-pi spacing windows, 5% edge margins."""
    spacing = drive.spacing
    phase = times * spacing / (2.0 * math.pi)
    frac = phase - np.floor(phase)
    mask = (frac >= 0.05) & (frac < 0.95)
    if not np.any(mask):
        return float(np.mean(series))
    return float(np.mean(series[mask]))


def _apply_axis(scenario: Scenario, axis: str, value) -> Scenario:
    if axis == "U":
        return dataclasses.replace(scenario, interaction=float(value))
    if axis == "gamma":
        return dataclasses.replace(scenario, gamma=float(value))
    drives = tuple(
        (label, dataclasses.replace(d, pairs=int(value))) for label, d in scenario.drives
    )
    return dataclasses.replace(scenario, drives=drives)


def scan(spec: ScanSpec, cfg: IntegratorConfig | None = None):
    """Run the base scenario once per axis value and reduce one metric.

    Per-value integration failures are reported in the returned points; the
    scan continues.
    """
    points = []
    for value in spec.values:
        scenario = _apply_axis(spec.base, spec.axis, value)
        if spec.metric == "blockade_gap":
            scenario = dataclasses.replace(scenario, with_effective=True)
        try:
            result = run(scenario, cfg)
        except IntegrationError as exc:
            points.append(ScanPoint(value=float(value), metric=None, error=str(exc)))
            continue
        if spec.metric == "blockade_gap":
            obs = scenario.observables[0]
            label = scenario.drives[0][0]
            series = np.abs(
                result.columns[_colname(obs, label, "numeric")]
                - result.columns[_colname(obs, label, "effective")]
            )
        else:
            if spec.metric not in result.columns:
                points.append(
                    ScanPoint(value=float(value), metric=None, error=f"no column {spec.metric!r}")
                )
                continue
            series = result.columns[spec.metric]
        if spec.reduction == "max":
            metric = float(np.max(series))
        elif spec.reduction == "final":
            metric = float(series[-1])
        else:
            metric = _plateau_mean(result.times, series, scenario.drives[0][1])
        points.append(ScanPoint(value=float(value), metric=metric))
    return points
