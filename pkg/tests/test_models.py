import math
from fractions import Fraction

import numpy as np
import pytest

from polydrive import (
    DriveParams,
    RydbergParams,
    effective_w_model,
    envelope,
    lambda_model,
    rydberg_model,
    two_level_model,
)
from polydrive.errors import ValidationError


def all_models(gamma=0.0):
    p = DriveParams(1.0, Fraction(1), pairs=3)
    p2 = DriveParams(1.0, Fraction(1), scale_root=2, pairs=3)
    return [
        two_level_model(p, gamma),
        two_level_model(DriveParams(1.0, Fraction(1), pairs=3, central_detuning=5.0), gamma),
        rydberg_model(RydbergParams(p2, 2, 400.0), gamma),
        rydberg_model(RydbergParams(DriveParams(1.0, Fraction(1), scale_root=3, pairs=3), 3, 50.0), gamma),
        effective_w_model(p2, 2),
        lambda_model(p2, gamma),
    ]


def test_hamiltonian_is_hermitian_at_random_times():
    rng = np.random.default_rng(29)
    times = rng.uniform(0.0, 20.0, size=1000)
    for model in all_models(gamma=0.1):
        for t in times[:: max(1, len(times) // 100)]:
            h = model.hamiltonian_at(t)
            assert h.is_hermitian(1e-12)


def test_two_level_resonant_hamiltonian_is_envelope_times_sigma_x():
    p = DriveParams(1.0, Fraction(1), pairs=4)
    model = two_level_model(p)
    for t in (0.0, 0.3, 1.7, 5.1):
        h = model.hamiltonian_at(t).entries
        a = envelope(t, p)
        np.testing.assert_allclose(h, [[0.0, a], [a, 0.0]], atol=1e-12)


def test_two_level_detuned_hamiltonian_carries_the_phase():
    delta = 7.0
    p = DriveParams(1.0, Fraction(1), pairs=2, central_detuning=delta)
    model = two_level_model(p)
    for t in (0.2, 1.1, 3.3):
        comb = envelope(t, p) - p.rabi  # sidebands only
        ph = np.exp(1j * delta * t)
        want = np.array([[0.0, comb + np.conj(ph)], [comb + ph, 0.0]])
        np.testing.assert_allclose(model.hamiltonian_at(t).entries, want, atol=1e-12)


def test_amplitude_at_matches_envelope_when_resonant():
    p = DriveParams(1.0, Fraction(1), pairs=5)
    model = two_level_model(p)
    t = np.linspace(0.0, 5.0, 50)
    for ti in t:
        assert abs(model.amplitude_at(ti) - envelope(ti, p)) < 1e-12


def test_rydberg_basis_ordering_and_labels():
    p = DriveParams(1.0, Fraction(1), scale_root=2, pairs=1)
    model = rydberg_model(RydbergParams(p, 2, 10.0))
    assert model.basis_labels == ("gg", "ge", "eg", "ee")
    model3 = rydberg_model(RydbergParams(DriveParams(1.0, Fraction(1), scale_root=3, pairs=1), 3, 10.0))
    assert model3.basis_labels[0] == "ggg"
    assert model3.basis_labels[-1] == "eee"
    assert len(model3.basis_labels) == 8


def test_rydberg_two_atom_triplet_subspace_block():
    u = 25.0
    p = DriveParams(1.0, Fraction(1), scale_root=2, pairs=3)
    model = rydberg_model(RydbergParams(p, 2, u))
    # basis {|gg>, (|ge>+|eg>)/sqrt2, |ee>}
    v = np.zeros((4, 3), dtype=complex)
    v[0, 0] = 1.0
    v[1, 1] = v[2, 1] = 1.0 / math.sqrt(2.0)
    v[3, 2] = 1.0
    for t in (0.0, 0.4, 2.2):
        a = envelope(t, p)
        block = v.conj().T @ model.hamiltonian_at(t).entries @ v
        r2a = math.sqrt(2.0) * a
        want = np.array([[0.0, r2a, 0.0], [r2a, 0.0, r2a], [0.0, r2a, u]])
        np.testing.assert_allclose(block, want, atol=1e-12)


def test_rydberg_singlet_state_is_dark():
    p = DriveParams(1.0, Fraction(1), scale_root=2, pairs=3)
    model = rydberg_model(RydbergParams(p, 2, 25.0))
    singlet = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    for t in (0.1, 1.3, 4.4):
        out = model.hamiltonian_at(t).entries @ singlet
        assert np.max(np.abs(out)) < 1e-12


def test_rydberg_interaction_counts_excited_pairs():
    for atoms, pairs in ((3, 3), (5, 10)):
        u = 7.0
        p = DriveParams(1.0, Fraction(1), scale_root=atoms, pairs=1)
        model = rydberg_model(RydbergParams(p, atoms, u))
        idx = model.basis_labels.index("e" * atoms)
        assert abs(model.static_matrix[idx, idx] - pairs * u) < 1e-12


def test_rydberg_channels_are_per_atom_lowering_operators():
    gamma = 0.09
    p = DriveParams(1.0, Fraction(1), scale_root=2, pairs=1)
    model = rydberg_model(RydbergParams(p, 2, 10.0), gamma)
    assert len(model.channels) == 2
    labels = model.basis_labels
    # first channel lowers atom 1: |eg> -> |gg>, |ee> -> |ge>
    lop = model.channels[0].operator.entries
    assert abs(lop[labels.index("gg"), labels.index("eg")] - math.sqrt(gamma)) < 1e-15
    assert abs(lop[labels.index("ge"), labels.index("ee")] - math.sqrt(gamma)) < 1e-15
    assert np.count_nonzero(lop) == 2


def test_rydberg_params_validation():
    p = DriveParams(1.0, Fraction(1), pairs=1)
    with pytest.raises(ValidationError):
        RydbergParams(p, 1, 10.0)
    with pytest.raises(ValidationError):
        RydbergParams(p, 6, 10.0)
    with pytest.raises(ValidationError):
        RydbergParams(p, 2, 0.0)


def test_effective_w_model_is_scaled_sigma_x():
    p = DriveParams(1.0, Fraction(1), scale_root=3, pairs=2)
    model = effective_w_model(p, 3)
    assert model.basis_labels == ("G", "W")
    for t in (0.0, 0.7):
        a = envelope(t, p)
        want = math.sqrt(3.0) * np.array([[0.0, a], [a, 0.0]])
        np.testing.assert_allclose(model.hamiltonian_at(t).entries, want, atol=1e-12)
    with pytest.raises(ValidationError):
        effective_w_model(p, 1)


def test_lambda_model_structure_and_channels():
    gamma = 0.2
    p = DriveParams(1.0, Fraction(2), scale_root=2, pairs=2)
    model = lambda_model(p, gamma)
    assert model.basis_labels == ("g", "e", "r")
    a = envelope(0.9, p)
    want = np.array([[0.0, 0.0, a], [0.0, 0.0, a], [a, a, 0.0]])
    np.testing.assert_allclose(model.hamiltonian_at(0.9).entries, want, atol=1e-12)
    assert len(model.channels) == 2
    for i, target in enumerate(("g", "e")):
        lop = model.channels[i].operator.entries
        assert abs(lop[model.basis_labels.index(target), 2] - math.sqrt(gamma / 2.0)) < 1e-15
        assert np.count_nonzero(lop) == 1


def test_two_level_channel_rate_is_folded_into_the_operator():
    gamma = 0.3
    model = two_level_model(DriveParams(1.0, Fraction(1), pairs=1), gamma)
    lop = model.channels[0].operator.entries
    np.testing.assert_allclose(lop, [[0.0, math.sqrt(gamma)], [0.0, 0.0]], atol=1e-15)


def test_gamma_zero_builds_no_channels():
    for model in all_models(gamma=0.0):
        assert model.channels == ()


def test_model_matrices_are_read_only():
    model = two_level_model(DriveParams(1.0, Fraction(1), pairs=1))
    with pytest.raises(ValueError):
        model.drive_matrix[0, 0] = 1.0
