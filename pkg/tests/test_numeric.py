import math

import numpy as np
import pytest
import scipy.linalg
from scipy.linalg import LinAlgError

from conftest import ssh
from ptchain.core.errors import SolverError, ValidationError
from ptchain.physics.lattice import build_ssh
from ptchain.physics.numeric import as_complex_matrix, eigen_decompose, infinity_norm


def _charpoly_roots(m):
    """Roots of the characteristic polynomial via Faddeev-LeVerrier coefficients."""
    n = m.shape[0]
    coefficients = [1.0 + 0j]
    k_matrix = np.zeros_like(m)
    identity = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        k_matrix = m @ k_matrix + coefficients[-1] * identity
        coefficients.append(-np.trace(m @ k_matrix) / k)
    return np.roots(coefficients)


@pytest.mark.parametrize("n", [10, 50])
def test_uniform_chain_matches_cosine_band(n):
    decomp = eigen_decompose(build_ssh(ssh(n=n, delta=0.0)))
    expected = np.sort(2 * np.cos(np.arange(1, n + 1) * math.pi / (n + 1)))

    assert decomp.hermitian
    assert np.all(decomp.values.imag == 0.0)
    np.testing.assert_allclose(decomp.values.real, expected, atol=1e-10)
    assert decomp.max_residual <= 1e-10 * decomp.matrix_norm


@pytest.mark.parametrize("gamma", [0.3, 0.9, 1.1, 2.0])
def test_pt_dimer_matches_closed_form(gamma):
    tau = 1.0
    m = np.array([[1j * gamma, tau], [tau, -1j * gamma]])
    decomp = eigen_decompose(m)

    root = np.sqrt(complex(tau**2 - gamma**2))
    got = sorted(decomp.values, key=lambda z: (round(z.imag, 12), round(z.real, 12)))
    want = sorted([root, -root], key=lambda z: (round(z.imag, 12), round(z.real, 12)))
    np.testing.assert_allclose(got, want, atol=1e-12)
    assert decomp.max_residual <= 1e-10 * decomp.matrix_norm


def test_random_matrix_matches_characteristic_polynomial():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    decomp = eigen_decompose(m)
    roots = _charpoly_roots(m)

    for value in decomp.values:
        assert np.min(np.abs(roots - value)) < 1e-8
    assert decomp.max_residual <= 1e-10 * infinity_norm(m)


def test_eigenpairs_are_sorted_normalized_and_phase_fixed():
    rng = np.random.default_rng(11)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    decomp = eigen_decompose(m)

    keys = list(zip(decomp.values.real, decomp.values.imag))
    assert keys == sorted(keys)
    np.testing.assert_allclose(np.linalg.norm(decomp.vectors, axis=0), 1.0, atol=1e-12)
    for i in range(decomp.dim):
        v = decomp.vector(i)
        pivot = v[np.argmax(np.abs(v))]
        assert pivot.imag == pytest.approx(0.0, abs=1e-14)
        assert pivot.real > 0
        np.testing.assert_allclose(m @ v, decomp.values[i] * v, atol=1e-10)


def test_one_by_one_matrix():
    decomp = eigen_decompose([[2.5 - 1j]])
    assert decomp.values[0] == 2.5 - 1j
    assert decomp.vector(0)[0] == 1.0


@pytest.mark.parametrize(
    "bad",
    [
        np.zeros((2, 3)),
        np.zeros((0, 0)),
        np.zeros(4),
        np.array([[1.0, np.nan], [0.0, 1.0]]),
        np.array([[np.inf]]),
        [["a"]],
    ],
)
def test_rejects_malformed_input(bad):
    with pytest.raises(ValidationError):
        eigen_decompose(bad)


@pytest.mark.parametrize("tolerance", [0.0, -1e-10, float("nan")])
def test_rejects_bad_residual_tolerance(tolerance):
    with pytest.raises(ValidationError):
        eigen_decompose(np.eye(2), residual_tolerance=tolerance)


def test_non_convergence_reports_deflation_index(monkeypatch):
    def fail(*args, **kwargs):
        raise LinAlgError(
            "eig algorithm (geev) did not converge (only eigenvalues with order >= 3 have converged)"
        )

    monkeypatch.setattr(scipy.linalg, "eig", fail)
    with pytest.raises(SolverError) as excinfo:
        eigen_decompose(np.array([[0, 1], [2j, 0]]))

    assert excinfo.value.deflation_index == 3
    assert excinfo.value.exit_code == 4


def test_residual_violation_is_a_solver_error(monkeypatch):
    def wrong(a, check_finite=False):
        return np.array([5.0, 7.0], dtype=complex), np.eye(2, dtype=complex)

    monkeypatch.setattr(scipy.linalg, "eig", wrong)
    with pytest.raises(SolverError, match="residual"):
        eigen_decompose(np.array([[0, 1], [2j, 0]]))


def test_as_complex_matrix_and_norm():
    a = as_complex_matrix([[1, -2], [3, 4j]])
    assert a.dtype == np.complex128
    assert infinity_norm(a) == 7.0


def test_identity_and_norm_examples():
    decomp = eigen_decompose(np.eye(3))
    np.testing.assert_allclose(decomp.values, [1, 1, 1], atol=1e-15)
    assert infinity_norm(np.zeros((3, 3))) == 0.0
    assert infinity_norm(np.eye(4)) == 1.0
    assert infinity_norm(np.array([[0.5j, 0.7], [0.7, -0.5j]])) == pytest.approx(1.2)


def test_spectrum_is_invariant_under_simultaneous_permutation():
    m = build_ssh(ssh(n=12, theta=0.7, potential="u2", gamma=0.4))
    perm = np.random.default_rng(3).permutation(12)
    permuted = m[np.ix_(perm, perm)]

    def rounded(values):
        # conjugate pairs share a real part up to rounding noise
        return sorted(values, key=lambda z: (round(z.real, 8), round(z.imag, 8)))

    np.testing.assert_allclose(
        rounded(eigen_decompose(permuted).values),
        rounded(eigen_decompose(m).values),
        atol=1e-10,
    )


def test_repeated_calls_are_bit_identical():
    m = build_ssh(ssh(n=20, theta=0.2, potential="u1", gamma=0.3))
    first, second = eigen_decompose(m), eigen_decompose(m)
    np.testing.assert_array_equal(first.values, second.values)
    np.testing.assert_array_equal(first.vectors, second.vectors)
