"""Polychromatic drive envelope, branch index and rational-ratio classifier.

The drive is a comb of fields: a resonant central one plus N symmetric
pairs spaced by Delta.  Its envelope is

    A_N(t) = Omega * [1 + 2 * sum_{n=1}^{N} cos(n Delta t)],

with the equivalent Dirichlet-kernel form sin(N Dt + Dt/2)/sin(Dt/2) kept
only as a cross-check oracle (it has removable singularities at Dt = 2 pi k).

The spacing is stored as the exact rational

    r = 2 sqrt(M) Omega / Delta,

so the number-theoretic classification (complete transfer always vs within
periodic windows) is done with integer arithmetic, never by float rational
detection.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NearSingularError, ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DriveParams:
    """Parameters of the polychromatic drive.

    rabi: Rabi amplitude Omega > 0 (sets the unit scale).
    ratio: exact rational r = 2 sqrt(scale_root) * Omega / Delta.
    scale_root: positive integer M supplying the sqrt(M) factor.
    pairs: number N >= 0 of symmetric sideband pairs.
    central_detuning: detuning delta of the central field.
    """

    rabi: float
    ratio: Fraction
    scale_root: int = 1
    pairs: int = 0
    central_detuning: float = 0.0

    def __post_init__(self):
        if not (self.rabi > 0 and math.isfinite(self.rabi)):
            raise ValidationError(f"rabi must be positive and finite, got {self.rabi!r}")
        ratio = Fraction(self.ratio)
        if ratio <= 0:
            raise ValidationError(f"spacing ratio must be positive, got {ratio!r}")
        object.__setattr__(self, "ratio", ratio)
        if self.scale_root < 1:
            raise ValidationError(f"scale_root must be >= 1, got {self.scale_root}")
        if self.pairs < 0:
            raise ValidationError(f"pairs must be >= 0, got {self.pairs}")
        if not math.isfinite(self.central_detuning):
            raise ValidationError("central_detuning must be finite")

    @property
    def spacing(self) -> float:
        """Sideband spacing Delta = 2 sqrt(M) Omega / r."""
        return 2.0 * math.sqrt(self.scale_root) * self.rabi / float(self.ratio)


class RatioKind(enum.Enum):
    CONCLUSION_I = "conclusion-i"
    CONCLUSION_II = "conclusion-ii"
    GENERIC = "generic"


@dataclass(frozen=True)
class RatioClass:
    """Classification of the ratio r = (2j+1)/(2k+1)."""

    kind: RatioKind
    j: int | None = None
    k: int | None = None


@dataclass(frozen=True)
class StabilizationWindow:
    """Half-open phase window [start, end) in Delta*t, radians; width 2 pi."""

    start: float
    end: float

    def __contains__(self, phase: float) -> bool:
        return self.start <= phase < self.end


def envelope(t, p: DriveParams):
    """Canonical envelope A_N(t) = Omega [1 + 2 sum cos(n Delta t)].

    Smooth for all t; accepts scalars or arrays.
    """
    t = np.asarray(t, dtype=np.float64)
    if p.pairs == 0:
        return p.rabi * np.ones_like(t)[()]
    n = np.arange(1, p.pairs + 1)
    s = np.cos(np.multiply.outer(t, n) * p.spacing).sum(axis=-1)
    return (p.rabi * (1.0 + 2.0 * s))[()]


def envelope_dirichlet(t, p: DriveParams):
    """Dirichlet-kernel form Omega sin(N Dt + Dt/2)/sin(Dt/2).

    Cross-check oracle only; raises near the removable singularities
    Dt = 2 pi k where the caller must use envelope() instead.
    """
    t = np.asarray(t, dtype=np.float64)
    half = 0.5 * p.spacing * t
    denom = np.sin(half)
    if np.min(np.abs(denom)) <= 1e-8:
        raise NearSingularError(
            "envelope_dirichlet evaluated within 1e-8 of sin(Delta t/2) = 0"
        )
    return (p.rabi * np.sin((2 * p.pairs + 1) * half) / denom)[()]


def phase_integral(t, p: DriveParams):
    """Accumulated phase integral of A_N from 0 to t, in closed form:

        Omega t + 2 Omega sum_{n=1}^{N} sin(n Delta t) / (n Delta).
    """
    t = np.asarray(t, dtype=np.float64)
    base = p.rabi * t
    if p.pairs == 0:
        return base[()]
    n = np.arange(1, p.pairs + 1)
    s = (np.sin(np.multiply.outer(t, n) * p.spacing) / (n * p.spacing)).sum(axis=-1)
    return (base + 2.0 * p.rabi * s)[()]


def branch_index(delta_t_phase):
    """Logarithm-branch index m = floor(phase / 2 pi) of the N -> infinity limit."""
    phase = np.asarray(delta_t_phase, dtype=np.float64)
    if np.any(phase < 0):
        raise ValidationError("branch_index requires a non-negative phase")
    m = np.floor(phase / TWO_PI).astype(np.int64)
    return m[()] if m.ndim else int(m)


def classify(p: DriveParams) -> RatioClass:
    """Classify the exact ratio r = 2 sqrt(M) Omega / Delta.

    With r = p/q in lowest terms:
      * q = 1 and p odd  -> complete transfer, stabilized at unity always.
      * p, q odd coprime -> complete transfer within periodic windows.
      * p or q even      -> generic (no stabilization claim made).
    """
    num, den = p.ratio.numerator, p.ratio.denominator
    if num % 2 == 0 or den % 2 == 0:
        return RatioClass(RatioKind.GENERIC)
    if den == 1:
        return RatioClass(RatioKind.CONCLUSION_I, j=(num - 1) // 2, k=0)
    return RatioClass(RatioKind.CONCLUSION_II, j=(num - 1) // 2, k=(den - 1) // 2)


def stabilization_windows(k: int, count: int = 5):
    """Phase windows [(2k'k + k' - 1) pi, (2k'k + k' + 1) pi) for k' = 1, 3, 5, ...

    k comes from a conclusion-(ii) classification; k = 0 is the degenerate
    check whose windows tile the whole phase axis.
    """
    if k < 0:
        raise ValidationError(f"k must be >= 0, got {k}")
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    windows = []
    for i in range(count):
        kp = 2 * i + 1
        start = (2 * kp * k + kp - 1) * math.pi
        windows.append(StabilizationWindow(start, start + TWO_PI))
    return windows
