"""Closed-form populations for the driven two-level, blockaded multi-atom
and Lambda three-level models, plus their N -> infinity limits.

All functions accept scalar or array times and are valid for a resonant
central field (delta = 0) starting from the all-ground initial state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drive import DriveParams, branch_index, phase_integral
from .errors import ValidationError


@dataclass(frozen=True)
class TwoLevelPopulations:
    """|c_g|^2 and |c_e|^2; they sum to 1 identically."""

    pg: np.ndarray
    pe: np.ndarray


@dataclass(frozen=True)
class LambdaPopulations:
    """|c_g|^2, |c_e|^2 and |c_r|^2 of the three-level model."""

    pg: np.ndarray
    pe: np.ndarray
    pr: np.ndarray


def two_level(t, p: DriveParams) -> TwoLevelPopulations:
    """Exact populations of the resonantly driven two-level atom:

        pe = sin^2(phi(t)),  pg = cos^2(phi(t)),

    with phi the closed-form phase integral of the envelope.
    """
    if p.central_detuning != 0.0:
        raise ValidationError(
            "closed-form two-level populations exist only for zero central detuning"
        )
    phi = phase_integral(t, p)
    s = np.sin(phi)
    return TwoLevelPopulations(pg=1.0 - s * s, pe=s * s)


def two_level_limit(t, rabi: float, spacing: float) -> TwoLevelPopulations:
    """N -> infinity limit: piecewise-constant in t through the branch index m,

        pe = sin^2((2m+1) pi Omega / Delta),  m = floor(Delta t / 2 pi).
    """
    m = np.asarray(branch_index(np.asarray(t, dtype=np.float64) * spacing))
    s = np.sin((2 * m + 1) * math.pi * rabi / spacing)
    pe = (s * s)[()]
    return TwoLevelPopulations(pg=1.0 - pe, pe=pe)


def bell_population(t, p: DriveParams) -> np.ndarray:
    """|c_T|^2 = sin^2(sqrt(2) phi(t)) of the blockade-effective two-atom model.

    Valid in the blockade regime U >> sqrt(2) (2N+1) Omega.
    """
    return w_population(t, p, 2)


def w_population(t, p: DriveParams, atoms: int) -> np.ndarray:
    """|c_W|^2 = sin^2(sqrt(M) phi(t)) of the M-atom blockade-effective model."""
    if atoms < 2:
        raise ValidationError(f"W-state population requires at least 2 atoms, got {atoms}")
    s = np.sin(math.sqrt(atoms) * phase_integral(t, p))
    return (s * s)[()]


def w_limit(t, rabi: float, spacing: float, atoms: int) -> np.ndarray:
    """N -> infinity limit of the W-state population,

        sin^2(sqrt(M) (2m+1) pi Omega / Delta).
    """
    m = np.asarray(branch_index(np.asarray(t, dtype=np.float64) * spacing))
    s = np.sin(math.sqrt(atoms) * (2 * m + 1) * math.pi * rabi / spacing)
    return (s * s)[()]


def lambda_populations(t, p: DriveParams) -> LambdaPopulations:
    """Exact populations of the Lambda system started in |g>:

        pg = cos^4(phi/2),  pe = sin^4(phi/2),  pr = sin^2(phi) / 2,

    with phi = sqrt(2) * phase_integral(t).  The trig identity
    cos^4 + sin^4 + sin^2(2x)/2 = 1 makes the sum exactly 1.
    """
    phi = math.sqrt(2.0) * phase_integral(t, p)
    c2 = np.cos(0.5 * phi) ** 2
    s2 = 1.0 - c2
    sp = np.sin(phi)
    return LambdaPopulations(pg=c2 * c2, pe=s2 * s2, pr=0.5 * sp * sp)


def lambda_limit(t, rabi: float, spacing: float) -> np.ndarray:
    """N -> infinity limit of the Lambda excited-ground-state population,

        pe = sin^4(sqrt(2) (2m+1) pi Omega / (2 Delta)).
    """
    m = np.asarray(branch_index(np.asarray(t, dtype=np.float64) * spacing))
    s = np.sin(math.sqrt(2.0) * (2 * m + 1) * math.pi * rabi / (2.0 * spacing))
    return (s ** 4)[()]
