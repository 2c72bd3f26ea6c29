"""Builders for the driven two-level, Rydberg multi-atom, blockade-effective
and Lambda models.

Every model is a TimeDependentModel: a labeled basis, a Hermitian
Hamiltonian H(t) and a set of collapse channels with the decay rate folded
into the operator (L = sqrt(rate) * jump).

Internally H(t) is kept in the structured form

    H(t) = a(t) * D + S + Omega e^{i delta t} U + H.c.(U term),
    a(t) = base + 2 Omega sum_{n=1}^{N} cos(n Delta t),

which both hamiltonian_at() and the fast integrator kernels consume, so the
two can never disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .drive import DriveParams, envelope
from .errors import ValidationError
from .linalg import Operator

MAX_ATOMS = 5


@dataclass(frozen=True)
class LindbladChannel:
    """Collapse operator with its rate already folded in."""

    operator: Operator


@dataclass(frozen=True)
class RydbergParams:
    """Drive plus atom count M and uniform pair interaction U (units of Omega)."""

    drive: DriveParams
    atoms: int
    interaction: float

    def __post_init__(self):
        if not (2 <= self.atoms <= MAX_ATOMS):
            raise ValidationError(
                f"atom count must be in [2, {MAX_ATOMS}], got {self.atoms}"
            )
        if not (self.interaction > 0 and math.isfinite(self.interaction)):
            raise ValidationError(f"interaction must be positive, got {self.interaction!r}")


@dataclass(frozen=True)
class TimeDependentModel:
    basis_labels: tuple
    drive: DriveParams
    channels: tuple = ()
    fastest_scale: float = 1.0
    # structured Hamiltonian parts (see module docstring)
    drive_matrix: np.ndarray = None
    drive_base: float = 0.0
    up_matrix: np.ndarray = None
    static_matrix: np.ndarray = None

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def amplitude_at(self, t) -> float:
        """a(t) = drive_base + comb part of the envelope."""
        return self.drive_base + (envelope(t, self.drive) - self.drive.rabi)

    def hamiltonian_at(self, t) -> Operator:
        h = self.amplitude_at(t) * self.drive_matrix
        if self.static_matrix is not None:
            h = h + self.static_matrix
        if self.up_matrix is not None:
            ph = self.drive.rabi * np.exp(1j * self.drive.central_detuning * t)
            h = h + ph * self.up_matrix + np.conj(ph) * self.up_matrix.conj().T
        return Operator(h)


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.ascontiguousarray(m, dtype=np.complex128)
    m.flags.writeable = False
    return m


def two_level_model(p: DriveParams, gamma: float = 0.0) -> TimeDependentModel:
    """Two-level atom under the full polychromatic drive.

    H(t) = Omega (e^{i delta t} + 2 sum cos(n Delta t)) |e><g| + H.c.; the
    optional channel is sqrt(gamma) |g><e|.
    """
    sx = _frozen([[0, 1], [1, 0]])
    channels = ()
    if gamma > 0:
        lop = np.zeros((2, 2), dtype=np.complex128)
        lop[0, 1] = math.sqrt(gamma)
        channels = (LindbladChannel(Operator(lop)),)
    scale = max(
        p.pairs * p.spacing, (2 * p.pairs + 1) * p.rabi, abs(p.central_detuning), gamma
    )
    if p.central_detuning == 0.0:
        return TimeDependentModel(
            basis_labels=("g", "e"),
            drive=p,
            channels=channels,
            fastest_scale=scale,
            drive_matrix=sx,
            drive_base=p.rabi,
        )
    up = np.zeros((2, 2), dtype=np.complex128)
    up[1, 0] = 1.0  # |e><g|, multiplied by Omega e^{i delta t}
    return TimeDependentModel(
        basis_labels=("g", "e"),
        drive=p,
        channels=channels,
        fastest_scale=scale,
        drive_matrix=sx,
        drive_base=0.0,
        up_matrix=_frozen(up),
    )


def rydberg_model(rp: RydbergParams, gamma: float = 0.0) -> TimeDependentModel:
    """M driven atoms with uniform pairwise Rydberg interaction U.

    Basis: all M-letter strings over {g, e}, lexicographic, atom 1 leftmost.
    H(t) = A_N(t) sum_alpha sigma_x^(alpha) + U sum_{alpha<beta} |ee><ee|_{alpha beta};
    one sqrt(gamma) |g><e| channel per atom.
    """
    m_atoms = rp.atoms
    dim = 2 ** m_atoms
    labels = tuple(
        "".join("e" if (idx >> (m_atoms - 1 - a)) & 1 else "g" for a in range(m_atoms))
        for idx in range(dim)
    )
    drive_mat = np.zeros((dim, dim), dtype=np.complex128)
    for idx in range(dim):
        for a in range(m_atoms):
            drive_mat[idx ^ (1 << (m_atoms - 1 - a)), idx] += 1.0
    static = np.zeros((dim, dim), dtype=np.complex128)
    for idx in range(dim):
        n_exc = bin(idx).count("1")
        static[idx, idx] = rp.interaction * (n_exc * (n_exc - 1) // 2)
    channels = []
    if gamma > 0:
        root = math.sqrt(gamma)
        for a in range(m_atoms):
            bit = 1 << (m_atoms - 1 - a)
            lop = np.zeros((dim, dim), dtype=np.complex128)
            for idx in range(dim):
                if idx & bit:
                    lop[idx ^ bit, idx] = root
            channels.append(LindbladChannel(Operator(lop)))
    p = rp.drive
    scale = max(
        p.pairs * p.spacing,
        (2 * p.pairs + 1) * p.rabi * m_atoms,
        rp.interaction * m_atoms * (m_atoms - 1) / 2,
        gamma,
    )
    return TimeDependentModel(
        basis_labels=labels,
        drive=p,
        channels=tuple(channels),
        fastest_scale=scale,
        drive_matrix=_frozen(drive_mat),
        drive_base=p.rabi,
        static_matrix=_frozen(static),
    )


def effective_w_model(p: DriveParams, atoms: int) -> TimeDependentModel:
    """Blockade-effective two-state model {|g...g>, |W^M>}:

        H(t) = sqrt(M) A_N(t) (|G><W| + H.c.).
    """
    if atoms < 2:
        raise ValidationError(f"effective W model requires at least 2 atoms, got {atoms}")
    root = math.sqrt(atoms)
    drive_mat = _frozen([[0, root], [root, 0]])
    scale = max(p.pairs * p.spacing, root * (2 * p.pairs + 1) * p.rabi)
    return TimeDependentModel(
        basis_labels=("G", "W"),
        drive=p,
        fastest_scale=scale,
        drive_matrix=drive_mat,
        drive_base=p.rabi,
    )


def lambda_model(p: DriveParams, gamma: float = 0.0) -> TimeDependentModel:
    """Lambda atom: both ground states coupled to |r> by the same envelope.

    H(t) = A_N(t) (|r><g| + |r><e| + H.c.); channels sqrt(gamma/2) |g><r|
    and sqrt(gamma/2) |e><r|.
    """
    drive_mat = np.zeros((3, 3), dtype=np.complex128)
    drive_mat[2, 0] = drive_mat[0, 2] = 1.0
    drive_mat[2, 1] = drive_mat[1, 2] = 1.0
    channels = []
    if gamma > 0:
        root = math.sqrt(gamma / 2.0)
        for target in (0, 1):
            lop = np.zeros((3, 3), dtype=np.complex128)
            lop[target, 2] = root
            channels.append(LindbladChannel(Operator(lop)))
    scale = max(p.pairs * p.spacing, 2 * (2 * p.pairs + 1) * p.rabi, gamma)
    return TimeDependentModel(
        basis_labels=("g", "e", "r"),
        drive=p,
        channels=tuple(channels),
        fastest_scale=scale,
        drive_matrix=_frozen(drive_mat),
        drive_base=p.rabi,
    )
