"""Adaptive integration of the Schroedinger and Lindblad equations.

Both solvers use an embedded explicit Runge-Kutta 5(4) pair with
proportional-integral step control and cubic-Hermite dense output (see
_kernels).  Grid requests never force a step reduction.  Unitary runs track
the norm and renormalize only once the drift exceeds 1e-8 (recorded in the
diagnostics first); dissipative runs re-symmetrize rho after every accepted
step and treat the trace the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError, IntegrationError, UnknownLabelError, ValidationError
from .linalg import DensityMatrix, Operator, StateVector, hermitian_eigenvalues
from .models import TimeDependentModel

DRIFT_TOL = 1e-8
NEGATIVITY_TOL = -1e-6
POPULATION_SLACK = 1e-8


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    initial_step: float | None = None
    max_step: float | None = None
    norm_check_interval: int = 10

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            v = getattr(self, name)
            if not (0.0 < v < 1e-2):
                raise ValidationError(f"{name} must lie in (0, 1e-2), got {v!r}")
        if self.initial_step is not None and not self.initial_step > 0:
            raise ValidationError("initial_step must be positive")
        if self.norm_check_interval < 1:
            raise ValidationError("norm_check_interval must be >= 1")


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (n, d) amplitudes or (n, d, d) density matrices
    basis_labels: tuple
    is_density: bool
    final_state: object
    diagnostics: dict
    observables: dict = field(default_factory=dict)


def _steps(model: TimeDependentModel, cfg: IntegratorConfig):
    scale = max(model.fastest_scale, 1e-30)
    h0 = cfg.initial_step if cfg.initial_step is not None else 0.01 * 2.0 * math.pi / scale
    hmax = cfg.max_step if cfg.max_step is not None else 50.0 * h0
    return h0, hmax


def _ham_tuple(model: TimeDependentModel):
    d = model.dim
    zeros = np.zeros((d, d), dtype=np.complex128)
    drive = model.drive_matrix if model.drive_matrix is not None else zeros
    static = model.static_matrix if model.static_matrix is not None else zeros
    up = model.up_matrix if model.up_matrix is not None else zeros
    p = model.drive
    return (
        np.ascontiguousarray(drive),
        np.ascontiguousarray(static),
        np.ascontiguousarray(up),
        np.ascontiguousarray(up.conj().T),
        model.static_matrix is not None,
        model.up_matrix is not None,
        float(model.drive_base),
        2.0 * p.rabi,
        p.spacing,
        p.pairs,
        p.rabi,
        p.central_detuning,
    )


def _check_grid(grid) -> np.ndarray:
    g = np.ascontiguousarray(grid, dtype=np.float64)
    if g.ndim != 1 or g.shape[0] < 2:
        raise ValidationError("time grid must be a 1-d array with at least 2 samples")
    if np.any(np.diff(g) <= 0):
        raise ValidationError("time grid must be strictly increasing")
    return g


def _raise_for_status(status: int):
    if status == 1:
        raise IntegrationError("step underflow: required step below 1e-14 time units")
    if status == 2:
        raise IntegrationError("NaN detected during integration")


def integrate_schrodinger(
    model: TimeDependentModel, psi0: StateVector, grid, cfg: IntegratorConfig | None = None
) -> Trajectory:
    """Solve d psi/dt = -i H(t) psi on the requested grid."""
    if model.channels:
        raise ValidationError(
            "model has collapse channels; use integrate_lindblad for dissipative dynamics"
        )
    if psi0.dim != model.dim:
        raise DimensionMismatchError(
            f"initial state dim {psi0.dim} != model dim {model.dim}"
        )
    cfg = cfg or IntegratorConfig()
    g = _check_grid(grid)
    h0, hmax = _steps(model, cfg)
    states, status, nsteps, nrej, maxdrift = _kernels.integrate_sch(
        psi0.amplitudes.copy(),
        g,
        _ham_tuple(model),
        cfg.rel_tol,
        cfg.abs_tol,
        h0,
        hmax,
        DRIFT_TOL,
    )
    _raise_for_status(status)
    final = states[-1]
    final = final / math.sqrt(float(np.sum(np.abs(final) ** 2)))
    return Trajectory(
        times=g,
        states=states,
        basis_labels=model.basis_labels,
        is_density=False,
        final_state=StateVector(model.basis_labels, final),
        diagnostics={
            "steps": int(nsteps),
            "rejected_steps": int(nrej),
            "max_norm_drift": float(maxdrift),
        },
    )


def integrate_lindblad(
    model: TimeDependentModel, rho0: DensityMatrix, grid, cfg: IntegratorConfig | None = None
) -> Trajectory:
    """Solve the master equation

        d rho/dt = -i [H, rho] + sum_c (L rho L+ - (L+L rho + rho L+L)/2)

    on the requested grid."""
    if rho0.dim != model.dim:
        raise DimensionMismatchError(
            f"initial density matrix dim {rho0.dim} != model dim {model.dim}"
        )
    cfg = cfg or IntegratorConfig()
    g = _check_grid(grid)
    h0, hmax = _steps(model, cfg)
    d = model.dim
    dsup, csup, upsup, dnsup, has_up = _superoperators(model)
    p = model.drive
    states_flat, status, nsteps, nrej, maxdrift = _kernels.integrate_lin(
        rho0.entries.reshape(-1).copy(),
        d,
        g,
        dsup,
        csup,
        upsup,
        dnsup,
        has_up,
        float(model.drive_base),
        2.0 * p.rabi,
        p.spacing,
        p.pairs,
        p.rabi,
        p.central_detuning,
        cfg.rel_tol,
        cfg.abs_tol,
        h0,
        hmax,
        DRIFT_TOL,
    )
    _raise_for_status(status)
    states = states_flat.reshape(g.shape[0], d, d)
    min_eig = _negativity_scan(states, cfg.norm_check_interval)
    final = 0.5 * (states[-1] + states[-1].conj().T)
    final = final / float(np.real(np.trace(final)))
    return Trajectory(
        times=g,
        states=states,
        basis_labels=model.basis_labels,
        is_density=True,
        final_state=DensityMatrix(final),
        diagnostics={
            "steps": int(nsteps),
            "rejected_steps": int(nrej),
            "max_trace_drift": float(maxdrift),
            "min_eigenvalue": float(min_eig),
        },
    )


def _commutator_superoperator(x: np.ndarray) -> np.ndarray:
    """Flattened form of rho -> -i [x, rho] acting on row-major vec(rho)."""
    eye = np.eye(x.shape[0], dtype=np.complex128)
    return -1j * (np.kron(x, eye) - np.kron(eye, x.T))


def _superoperators(model: TimeDependentModel):
    """Split the Liouvillian as a(t) * dsup + csup + phase terms (flattened)."""
    d = model.dim
    n = d * d
    eye = np.eye(d, dtype=np.complex128)
    dsup = _commutator_superoperator(model.drive_matrix) if model.drive_matrix is not None \
        else np.zeros((n, n), dtype=np.complex128)
    csup = np.zeros((n, n), dtype=np.complex128)
    if model.static_matrix is not None:
        csup += _commutator_superoperator(model.static_matrix)
    for ch in model.channels:
        if ch.operator.dim != d:
            raise DimensionMismatchError("collapse channel dimension mismatch")
        lop = ch.operator.entries
        ldl = lop.conj().T @ lop
        csup += np.kron(lop, lop.conj())
        csup -= 0.5 * (np.kron(ldl, eye) + np.kron(eye, ldl.T))
    has_up = model.up_matrix is not None
    if has_up:
        upsup = _commutator_superoperator(model.up_matrix)
        dnsup = _commutator_superoperator(model.up_matrix.conj().T)
    else:
        upsup = np.zeros((n, n), dtype=np.complex128)
        dnsup = upsup
    return (
        np.ascontiguousarray(dsup),
        np.ascontiguousarray(csup),
        np.ascontiguousarray(upsup),
        np.ascontiguousarray(dnsup),
        has_up,
    )


def _negativity_scan(states: np.ndarray, interval: int) -> float:
    min_eig = np.inf
    for i in range(0, states.shape[0], interval):
        rho = 0.5 * (states[i] + states[i].conj().T)
        evals = hermitian_eigenvalues(Operator(rho))
        min_eig = min(min_eig, float(evals[0]))
    if min_eig < NEGATIVITY_TOL:
        raise IntegrationError(
            f"density matrix eigenvalue {min_eig!r} below -1e-6; integration step failed"
        )
    return min_eig


def _w_state_vector(basis_labels) -> np.ndarray:
    """Symmetric single-excitation state over an M-atom product basis."""
    singles = [
        i for i, lab in enumerate(basis_labels) if lab.count("e") == 1 and set(lab) <= {"g", "e"}
    ]
    if not singles:
        raise UnknownLabelError(
            f"no single-excitation product states in basis {basis_labels!r}"
        )
    w = np.zeros(len(basis_labels), dtype=np.complex128)
    w[singles] = 1.0 / math.sqrt(len(singles))
    return w


def _resolve_projection_vector(traj: Trajectory, label):
    labels = traj.basis_labels
    if isinstance(label, str):
        if label in labels:
            v = np.zeros(len(labels), dtype=np.complex128)
            v[labels.index(label)] = 1.0
            return v
        if label in ("T", "W"):
            return _w_state_vector(labels)
        raise UnknownLabelError(f"label {label!r} not resolvable in basis {labels!r}")
    raise UnknownLabelError(f"unsupported observable label {label!r}")


def population_series(traj: Trajectory, label) -> np.ndarray:
    """Per-time population of a basis state or of the symmetric |T>/|W> state.

    Also accepts an Operator projector directly.
    """
    key = label if isinstance(label, str) else None
    if key is not None and key in traj.observables:
        return traj.observables[key]
    if isinstance(label, Operator):
        if label.dim != len(traj.basis_labels):
            raise DimensionMismatchError("projector dimension mismatch")
        if traj.is_density:
            series = np.real(np.einsum("tij,ji->t", traj.states, label.entries))
        else:
            series = np.real(
                np.einsum("ti,ij,tj->t", traj.states.conj(), label.entries, traj.states)
            )
    else:
        v = _resolve_projection_vector(traj, label)
        if traj.is_density:
            series = np.real(np.einsum("i,tij,j->t", v.conj(), traj.states, v))
        else:
            series = np.abs(traj.states @ v.conj()) ** 2
    if np.min(series) < -POPULATION_SLACK or np.max(series) > 1.0 + POPULATION_SLACK:
        raise IntegrationError(
            f"population series for {label!r} leaves [0, 1] beyond 1e-8"
        )
    series.flags.writeable = False
    if key is not None:
        traj.observables[key] = series
    return series
