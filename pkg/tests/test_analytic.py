import math
from fractions import Fraction

import numpy as np
import pytest

from polydrive import (
    DriveParams,
    bell_population,
    lambda_limit,
    lambda_populations,
    two_level,
    two_level_limit,
    w_limit,
    w_population,
)
from polydrive.errors import ValidationError

TWO_PI = 2.0 * math.pi


def test_two_level_populations_sum_to_one():
    p = DriveParams(1.0, Fraction(1), pairs=10)
    t = np.linspace(0.0, 100.0, 100000)
    pops = two_level(t, p)
    np.testing.assert_allclose(pops.pg + pops.pe, 1.0, atol=1e-12)


def test_two_level_without_sidebands_is_plain_rabi():
    p = DriveParams(1.0, Fraction(1), pairs=0)
    t = np.linspace(0.0, 20.0, 2000)
    np.testing.assert_allclose(two_level(t, p).pe, np.sin(t) ** 2, atol=1e-14)


def test_two_level_rejects_detuned_central_field():
    p = DriveParams(1.0, Fraction(1), pairs=2, central_detuning=1.0)
    with pytest.raises(ValidationError):
        two_level(0.5, p)


def test_two_level_accepts_scalars_and_arrays():
    p = DriveParams(1.0, Fraction(1), pairs=2)
    scalar = two_level(1.3, p).pe
    assert np.ndim(scalar) == 0
    arr = two_level(np.array([1.3, 2.6]), p).pe
    assert arr.shape == (2,)
    assert abs(arr[0] - scalar) < 1e-15


def test_two_level_limit_is_piecewise_constant_per_window():
    spacing = 2.0
    t = np.linspace(0.0, 3.0 * TWO_PI / spacing, 301, endpoint=False)
    pe = two_level_limit(t, 1.0, spacing).pe
    m = np.floor(t * spacing / TWO_PI).astype(int)
    for window in range(3):
        vals = pe[m == window]
        assert np.ptp(vals) == 0.0


def test_two_level_limit_values():
    # spacing 2*Omega: sin^2((2m+1) pi/2) = 1 in every window
    pe = two_level_limit(np.array([0.5, 4.0, 7.0]), 1.0, 2.0).pe
    np.testing.assert_allclose(pe, 1.0, atol=1e-12)
    # spacing 6*Omega: sin^2(pi/6) = 1/4 in window 0, sin^2(pi/2) = 1 in window 1
    assert abs(two_level_limit(0.5, 1.0, 6.0).pe - 0.25) < 1e-12
    assert abs(two_level_limit(TWO_PI / 6.0 + 0.1, 1.0, 6.0).pe - 1.0) < 1e-12


def test_finite_comb_window_average_approaches_the_limit():
    p = DriveParams(1.0, Fraction(1, 3), pairs=200)  # spacing 6*Omega
    period = TWO_PI / p.spacing
    for window, want in ((0, 0.25), (1, 1.0)):
        t = np.linspace((window + 0.05) * period, (window + 0.95) * period, 2000)
        avg = float(np.mean(two_level(t, p).pe))
        assert abs(avg - want) < 0.02


def test_bell_population_is_the_two_atom_w_population():
    p = DriveParams(1.0, Fraction(1), scale_root=2, pairs=5)
    t = np.linspace(0.0, 10.0, 500)
    np.testing.assert_array_equal(bell_population(t, p), w_population(t, p, 2))


def test_w_population_requires_at_least_two_atoms():
    p = DriveParams(1.0, Fraction(1), pairs=2)
    with pytest.raises(ValidationError):
        w_population(0.5, p, 1)


def test_w_limit_matches_finite_comb_window_average():
    atoms = 3
    p = DriveParams(1.0, Fraction(1), scale_root=atoms, pairs=200)
    period = TWO_PI / p.spacing
    t = np.linspace(0.05 * period, 0.95 * period, 2000)
    avg = float(np.mean(w_population(t, p, atoms)))
    want = float(w_limit(0.5 * period, 1.0, p.spacing, atoms))
    assert abs(avg - want) < 0.02


def test_lambda_populations_sum_identity():
    p = DriveParams(1.0, Fraction(2), scale_root=2, pairs=10)
    t = np.linspace(0.0, 50.0, 50000)
    pops = lambda_populations(t, p)
    np.testing.assert_allclose(pops.pg + pops.pe + pops.pr, 1.0, atol=1e-12)


def test_lambda_populations_closed_form_structure():
    p = DriveParams(1.0, Fraction(2), scale_root=2, pairs=3)
    t = np.linspace(0.0, 10.0, 200)
    pops = lambda_populations(t, p)
    # pg and pe are squares of complementary half-angle populations:
    # sqrt(pg) + sqrt(pe) = cos^2 + sin^2 = 1
    np.testing.assert_allclose(np.sqrt(pops.pg) + np.sqrt(pops.pe), 1.0, atol=1e-9)
    assert np.all(pops.pr <= 0.5 + 1e-12)


def test_lambda_limit_matches_finite_comb_window_average():
    p = DriveParams(1.0, Fraction(2, 3), scale_root=2, pairs=200)  # spacing 3*sqrt(2)
    period = TWO_PI / p.spacing
    t = np.linspace(0.05 * period, 0.95 * period, 2000)
    avg = float(np.mean(lambda_populations(t, p).pe))
    want = float(lambda_limit(0.5 * period, 1.0, p.spacing))
    assert abs(avg - want) < 0.02


def test_all_populations_stay_in_unit_interval():
    p = DriveParams(1.0, Fraction(1), pairs=10)
    t = np.linspace(0.0, 40.0, 10000)
    for series in (two_level(t, p).pe, w_population(t, p, 2), lambda_populations(t, p).pr):
        assert np.min(series) >= 0.0
        assert np.max(series) <= 1.0 + 1e-12
