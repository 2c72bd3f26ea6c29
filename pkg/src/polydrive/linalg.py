"""Dense complex linear algebra for small Hilbert spaces (dim <= 32).

Everything is stored densely: the largest system in the package is five
two-level atoms (dim 2^5 = 32), so sparse structures would only add
complexity.  All types are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError, ValidationError

_NORM_TOL = 1e-9
_HERM_TOL = 1e-9
_TRACE_TOL = 1e-9
_EIG_FLOOR = -1e-8


def _as_complex_matrix(entries) -> np.ndarray:
    a = np.array(entries, dtype=np.complex128, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValidationError("matrix contains NaN or Inf entries")
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over a named basis."""

    basis_labels: tuple
    amplitudes: np.ndarray

    def __init__(self, basis_labels, amplitudes):
        labels = tuple(str(s) for s in basis_labels)
        amps = np.array(amplitudes, dtype=np.complex128).ravel()
        if len(labels) != amps.shape[0]:
            raise ValidationError(
                f"{len(labels)} basis labels for {amps.shape[0]} amplitudes"
            )
        if not np.all(np.isfinite(amps.view(np.float64))):
            raise ValidationError("amplitudes contain NaN or Inf")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValidationError(f"state not normalized: sum |a|^2 = {norm_sq!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def basis_state(cls, basis_labels, label) -> "StateVector":
        labels = tuple(basis_labels)
        amps = np.zeros(len(labels), dtype=np.complex128)
        amps[labels.index(label)] = 1.0
        return cls(labels, amps)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class Operator:
    """Square complex matrix acting on a Hilbert space."""

    entries: np.ndarray

    def __init__(self, entries):
        object.__setattr__(self, "entries", _as_complex_matrix(entries))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim))

    @classmethod
    def ketbra(cls, dim: int, ket: int, bra: int) -> "Operator":
        m = np.zeros((dim, dim), dtype=np.complex128)
        m[ket, bra] = 1.0
        return cls(m)

    def is_hermitian(self, tol: float = _HERM_TOL) -> bool:
        a = self.entries
        scale = max(1.0, float(np.max(np.abs(a))))
        return float(np.max(np.abs(a - a.conj().T))) <= tol * scale


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    entries: np.ndarray

    def __init__(self, entries):
        a = _as_complex_matrix(entries)
        if np.max(np.abs(a - a.conj().T)) > _HERM_TOL:
            raise ValidationError("density matrix is not Hermitian within 1e-9")
        tr = complex(np.trace(a))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValidationError(f"density matrix trace {tr!r} is not 1 within 1e-9")
        evals = hermitian_eigenvalues(Operator(a))
        if evals[0] < _EIG_FLOOR:
            raise ValidationError(
                f"density matrix has negative eigenvalue {evals[0]!r}"
            )
        object.__setattr__(self, "entries", a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityMatrix":
        v = psi.amplitudes
        return cls(np.outer(v, v.conj()))


def apply(op: Operator, amplitudes) -> np.ndarray:
    """Matrix-vector product of an operator with an amplitude vector."""
    v = amplitudes.amplitudes if isinstance(amplitudes, StateVector) else np.asarray(
        amplitudes, dtype=np.complex128
    )
    if v.shape != (op.dim,):
        raise DimensionMismatchError(
            f"operator dim {op.dim} does not match vector shape {v.shape}"
        )
    return op.entries @ v


def dagger(op: Operator) -> Operator:
    """Conjugate transpose."""
    return Operator(op.entries.conj().T)


def tensor(ops) -> Operator:
    """Kronecker product of a list of operators (atom 1 = leftmost factor)."""
    ops = list(ops)
    if not ops:
        raise ValidationError("tensor() requires at least one factor")
    m = ops[0].entries
    for op in ops[1:]:
        m = np.kron(m, op.entries)
    return Operator(m)


def expectation(rho: DensityMatrix, proj: Operator) -> float:
    """Tr(rho * proj) for a Hermitian observable."""
    if rho.dim != proj.dim:
        raise DimensionMismatchError(
            f"density matrix dim {rho.dim} != observable dim {proj.dim}"
        )
    if not proj.is_hermitian():
        raise NotHermitianError("expectation() requires a Hermitian observable")
    val = complex(np.trace(rho.entries @ proj.entries))
    if abs(val.imag) > 1e-8:
        raise ValidationError(
            f"expectation has imaginary part {val.imag!r}; state is corrupted"
        )
    return val.real


def hermitian_eigenvalues(op: Operator) -> np.ndarray:
    """Real spectrum of a Hermitian operator, ascending.

    Cyclic Jacobi rotations on the complex Hermitian matrix: each pivot is
    phase-rotated onto the real axis and annihilated by a real Givens
    rotation.  Unconditionally stable at these sizes; converges
    quadratically once the off-diagonal mass is small.
    """
    a = op.entries
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return np.zeros(op.dim)
    if np.max(np.abs(a - a.conj().T)) > _HERM_TOL * max(1.0, scale):
        raise NotHermitianError("hermitian_eigenvalues requires a Hermitian matrix")
    b = np.array(a, dtype=np.complex128)
    n = b.shape[0]
    stop = 1e-14 * scale * n
    for _ in range(100):
        off = 0.0
        for p in range(n - 1):
            off += float(np.sum(np.abs(b[p, p + 1 :])))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = b[p, q]
                mag = abs(apq)
                if mag <= 1e-18 * scale:
                    continue
                # rotate the pivot's phase onto the real axis
                phase = apq / mag
                b[:, p] *= phase
                b[p, :] *= phase.conjugate()
                # real Givens rotation annihilating the (now real) pivot
                theta = 0.5 * math.atan2(2.0 * mag, (b[q, q] - b[p, p]).real)
                c, s = math.cos(theta), math.sin(theta)
                col_p = b[:, p].copy()
                col_q = b[:, q].copy()
                b[:, p] = c * col_p - s * col_q
                b[:, q] = s * col_p + c * col_q
                row_p = b[p, :].copy()
                row_q = b[q, :].copy()
                b[p, :] = c * row_p - s * row_q
                b[q, :] = s * row_p + c * row_q
    evals = np.sort(np.real(np.diag(b)))
    evals.flags.writeable = False
    return evals
