import numpy as np
import pytest

from polydrive import (
    DensityMatrix,
    Operator,
    StateVector,
    apply,
    dagger,
    expectation,
    hermitian_eigenvalues,
    tensor,
)
from polydrive.errors import DimensionMismatchError, NotHermitianError, ValidationError

from oracles import charpoly_eigenvalues


def random_hermitian(rng, dim, scale=1.0):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def random_unitary(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_state_vector_basis_state_and_populations():
    psi = StateVector.basis_state(("g", "e"), "e")
    assert psi.dim == 2
    assert psi.basis_labels == ("g", "e")
    np.testing.assert_allclose(psi.populations(), [0.0, 1.0])


def test_state_vector_rejects_unnormalized_amplitudes():
    with pytest.raises(ValidationError):
        StateVector(("g", "e"), [1.0, 0.5])


def test_state_vector_rejects_label_count_mismatch():
    with pytest.raises(ValidationError):
        StateVector(("g",), [1.0, 0.0])


def test_state_vector_rejects_nonfinite_amplitudes():
    with pytest.raises(ValidationError):
        StateVector(("g", "e"), [np.nan, 1.0])


def test_state_vector_amplitudes_immutable():
    psi = StateVector.basis_state(("g", "e"), "g")
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0


def test_operator_hermiticity_check():
    assert Operator([[0, 1], [1, 0]]).is_hermitian()
    assert Operator([[0, 1j], [-1j, 0]]).is_hermitian()
    assert not Operator([[0, 1], [0, 0]]).is_hermitian()


def test_operator_hermiticity_tolerance_is_scale_relative():
    # an absolute 1e-9 tolerance would wrongly reject this large matrix
    big = 1e6 * np.array([[0.0, 1.0], [1.0 + 1e-13, 0.0]])
    assert Operator(big).is_hermitian()


def test_operator_rejects_nonsquare_and_nonfinite():
    with pytest.raises(ValidationError):
        Operator([[1.0, 0.0]])
    with pytest.raises(ValidationError):
        Operator([[np.inf, 0.0], [0.0, 1.0]])


def test_ketbra_and_identity():
    op = Operator.ketbra(3, 2, 0)
    assert op.entries[2, 0] == 1.0
    assert np.count_nonzero(op.entries) == 1
    np.testing.assert_array_equal(Operator.identity(2).entries, np.eye(2))


def test_dagger_is_an_involution():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    op = Operator(a)
    np.testing.assert_array_equal(dagger(dagger(op)).entries, op.entries)


def test_apply_matches_matmul_and_checks_dimension():
    op = Operator([[0, 1], [1, 0]])
    psi = StateVector.basis_state(("g", "e"), "g")
    np.testing.assert_allclose(apply(op, psi), [0.0, 1.0])
    with pytest.raises(DimensionMismatchError):
        apply(op, np.zeros(3, dtype=complex))


def test_tensor_is_associative():
    rng = np.random.default_rng(5)
    ops = [Operator(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
           for _ in range(3)]
    left = tensor([tensor(ops[:2]), ops[2]])
    right = tensor([ops[0], tensor(ops[1:])])
    np.testing.assert_allclose(left.entries, right.entries, atol=1e-15)
    assert left.dim == 8


def test_tensor_rejects_empty_factor_list():
    with pytest.raises(ValidationError):
        tensor([])


def test_density_matrix_from_pure_state():
    psi = StateVector(("g", "e"), np.array([1.0, 1.0]) / np.sqrt(2.0))
    rho = DensityMatrix.from_state(psi)
    np.testing.assert_allclose(rho.entries, 0.5 * np.ones((2, 2)), atol=1e-15)


def test_density_matrix_rejects_invalid_inputs():
    with pytest.raises(ValidationError):
        DensityMatrix([[0.5, 0.5], [0.0, 0.5]])  # not Hermitian
    with pytest.raises(ValidationError):
        DensityMatrix([[0.7, 0.0], [0.0, 0.7]])  # trace != 1
    with pytest.raises(ValidationError):
        DensityMatrix([[1.5, 0.0], [0.0, -0.5]])  # negative eigenvalue


def test_expectation_matches_trace_and_requires_hermitian_observable():
    rng = np.random.default_rng(7)
    u = random_unitary(rng, 3)
    w = np.array([0.5, 0.3, 0.2])
    rho = DensityMatrix(u @ np.diag(w) @ u.conj().T)
    proj = Operator(random_hermitian(rng, 3))
    expected = np.real(np.trace(rho.entries @ proj.entries))
    assert abs(expectation(rho, proj) - expected) < 1e-12
    with pytest.raises(NotHermitianError):
        expectation(rho, Operator(np.triu(np.ones((3, 3)))))


def test_expectation_checks_dimensions():
    rho = DensityMatrix(np.eye(2) / 2.0)
    with pytest.raises(DimensionMismatchError):
        expectation(rho, Operator.identity(3))


def test_eigenvalues_match_characteristic_polynomial_roots():
    rng = np.random.default_rng(11)
    for dim in (2, 3, 4):
        for _ in range(10):
            a = random_hermitian(rng, dim, scale=rng.uniform(0.1, 100.0))
            got = hermitian_eigenvalues(Operator(a))
            want = charpoly_eigenvalues(a)
            scale = max(1.0, float(np.max(np.abs(want))))
            np.testing.assert_allclose(got, want, atol=1e-10 * scale)


def test_eigenvalues_of_diagonal_matrix_are_its_sorted_diagonal():
    d = np.diag([3.0, -1.0, 2.0, 0.0])
    np.testing.assert_allclose(
        hermitian_eigenvalues(Operator(d)), [-1.0, 0.0, 2.0, 3.0], atol=1e-14
    )


def test_eigenvalues_of_zero_matrix():
    np.testing.assert_array_equal(hermitian_eigenvalues(Operator(np.zeros((3, 3)))), np.zeros(3))


def test_eigenvalue_trace_invariants_dim8():
    rng = np.random.default_rng(13)
    a = random_hermitian(rng, 8)
    evals = hermitian_eigenvalues(Operator(a))
    assert abs(np.sum(evals) - np.real(np.trace(a))) < 1e-12
    assert abs(np.sum(evals**2) - np.real(np.trace(a @ a))) < 1e-11


def test_eigenvalues_of_unitary_rotated_mixture_are_the_weights():
    rng = np.random.default_rng(17)
    w = np.array([0.05, 0.15, 0.3, 0.5])
    u = random_unitary(rng, 4)
    rho = u @ np.diag(w) @ u.conj().T
    np.testing.assert_allclose(hermitian_eigenvalues(Operator(rho)), w, atol=1e-12)


def test_eigenvalues_require_hermitian_input():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(Operator([[0.0, 1.0], [0.0, 0.0]]))
