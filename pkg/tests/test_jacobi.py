import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xxchain import (
    JacobiMatrix,
    NumericalError,
    SpectralData,
    eigendecompose,
    is_persymmetric,
    krawtchouk_chain,
    moments_check,
    polynomial_values,
    reconstruct_from_measure,
    uniform_chain,
    weights_from_charpoly,
)
from xxchain.jacobi import eigensystem, polynomial_table

from conftest import disordered_chain, random_chain, random_family_chain


def test_rejects_bad_shapes_and_nonpositive_couplings():
    with pytest.raises(ValueError):
        JacobiMatrix([1.0, 1.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        JacobiMatrix([1.0, 0.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        JacobiMatrix([-1.0], [0.0, 0.0])


def test_matrix_is_immutable():
    J = uniform_chain(3)
    with pytest.raises(ValueError):
        J.couplings[0] = 2.0


def test_spectral_data_invariants():
    with pytest.raises(ValueError):
        SpectralData([0.0, 0.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        SpectralData([0.0, 1.0], [0.6, 0.5])


def test_three_site_uniform():
    # det(xI - J) = x (x^2 - 2); first components (1/2, 1/sqrt2, 1/2)
    S = eigendecompose(uniform_chain(2, 1.0))
    np.testing.assert_allclose(S.eigenvalues, [-np.sqrt(2), 0.0, np.sqrt(2)], atol=1e-14)
    np.testing.assert_allclose(S.weights, [0.25, 0.5, 0.25], atol=1e-14)


@pytest.mark.parametrize("K", [0.3, 1.0, 7.5])
def test_two_site(K):
    S = eigendecompose(JacobiMatrix([K], [0.0, 0.0]))
    np.testing.assert_allclose(S.eigenvalues, [-K, K], rtol=1e-14)
    np.testing.assert_allclose(S.weights, [0.5, 0.5], rtol=1e-14)


@pytest.mark.parametrize("M", [1, 2, 5, 17, 50])
def test_uniform_spectrum(M):
    x = eigendecompose(uniform_chain(M, 1.0)).eigenvalues
    s = np.arange(M + 1)
    np.testing.assert_allclose(x, -2 * np.cos(np.pi * (s + 1) / (M + 2)), atol=1e-13)


def test_single_site():
    S = eigendecompose(JacobiMatrix([], [0.7]))
    assert S.eigenvalues.tolist() == [0.7]
    assert S.weights.tolist() == [1.0]


def test_eigen_residuals(rng):
    J = random_chain(rng, 80)
    x, V = eigensystem(J)
    A = J.to_dense()
    norm = np.linalg.norm(A, 2)
    residual = np.linalg.norm(A @ V - V * x, axis=0)
    assert residual.max() <= 1e-12 * norm
    assert np.all(np.diff(x) > 0)


def test_disordered_chain_underflows(rng):
    # localized edge states: first components vanish in double precision
    with pytest.raises(NumericalError, match="weight underflow"):
        eigendecompose(disordered_chain(rng, 200))


def test_degenerate_spectrum_rejected():
    with pytest.raises(NumericalError, match="degenerate"):
        weights_from_charpoly(uniform_chain(2), [0.0, 0.0, 1.0])


def test_moments_examples():
    J = uniform_chain(2, 1.0)
    S = eigendecompose(J)
    assert np.dot(S.weights, S.eigenvalues) == pytest.approx(0.0, abs=1e-14)
    assert np.dot(S.weights, S.eigenvalues**2) == pytest.approx(1.0, rel=1e-14)
    assert moments_check(S, J)
    J2 = JacobiMatrix([3.0], [0.0, 0.0])
    assert moments_check(eigendecompose(J2), J2)
    for N in (3, 8, 21):
        K = krawtchouk_chain(N, 1.3)
        assert moments_check(eigendecompose(K), K)


def test_moments_detects_mismatch():
    J = uniform_chain(4)
    S = eigendecompose(J)
    assert not moments_check(S, uniform_chain(4, 1.01))


def test_polynomial_values_basics():
    J = JacobiMatrix([2.0], [0.0, 0.0])
    assert polynomial_values(J, 0.3, 0).tolist() == [1.0]
    np.testing.assert_allclose(polynomial_values(J, 2.0, 1), [1.0, 1.0])
    with pytest.raises(ValueError):
        polynomial_values(J, 0.0, 2)


def test_monic_top_degree_is_characteristic_polynomial(rng):
    J = random_chain(rng, 7)
    x = 0.37
    P = polynomial_values(J, x, J.n_sites, monic=True)
    assert P[-1] == pytest.approx(np.linalg.det(x * np.eye(7) - J.to_dense()), rel=1e-10)
    chi = polynomial_values(J, x, J.N)
    prefix = np.concatenate(([1.0], np.cumprod(J.couplings)))
    np.testing.assert_allclose(P[:-1], prefix * chi, rtol=1e-12)


def test_polynomials_are_eigenvector_columns(rng):
    J = random_chain(rng, 12)
    x, V = eigensystem(J)
    table = polynomial_table(J, x)
    w = V[0] ** 2
    np.testing.assert_allclose(np.sqrt(w) * table, V, atol=1e-10)


@pytest.mark.parametrize("n_sites", [2, 5, 20, 40])
def test_discrete_orthogonality(rng, n_sites):
    J = random_chain(rng, n_sites, low=0.5, high=2.0)
    S = eigendecompose(J)
    Q = np.sqrt(S.weights) * polynomial_table(J, S.eigenvalues)
    np.testing.assert_allclose(Q @ Q.T, np.eye(n_sites), atol=1e-8)


def test_charpoly_weights_examples():
    np.testing.assert_allclose(
        weights_from_charpoly(uniform_chain(2), [-np.sqrt(2), 0.0, np.sqrt(2)]),
        [0.25, 0.5, 0.25], rtol=1e-14,
    )
    np.testing.assert_allclose(
        weights_from_charpoly(JacobiMatrix([4.0], [0.0, 0.0]), [-4.0, 4.0]), [0.5, 0.5]
    )
    K = krawtchouk_chain(4, 1.0)
    S = eigendecompose(K)
    np.testing.assert_allclose(weights_from_charpoly(K, S.eigenvalues), S.weights, rtol=1e-10)


@pytest.mark.parametrize("n_sites", [3, 10, 30, 60])
def test_charpoly_weights_match_eigenvectors(rng, n_sites):
    J = random_chain(rng, n_sites, low=0.5, high=2.0)
    S = eigendecompose(J)
    np.testing.assert_allclose(weights_from_charpoly(J, S.eigenvalues), S.weights, rtol=1e-8)


def test_reconstruct_two_points():
    J = reconstruct_from_measure([-2.5, 2.5], [1.0, 1.0])
    np.testing.assert_allclose(J.couplings, [2.5], rtol=1e-15)
    np.testing.assert_allclose(J.fields, [0.0, 0.0], atol=1e-15)


@pytest.mark.parametrize(
    "J, rtol",
    [(uniform_chain(10), 1e-10), (krawtchouk_chain(20), 1e-9)],
    ids=["uniform-11", "krawtchouk-21"],
)
def test_reconstruct_round_trip(J, rtol):
    S = eigendecompose(J)
    R = reconstruct_from_measure(S.eigenvalues, S.weights)
    np.testing.assert_allclose(R.couplings, J.couplings, rtol=rtol)
    np.testing.assert_allclose(R.fields, J.fields, atol=rtol * J.couplings.max())


def test_reconstruct_rejects_bad_measures():
    with pytest.raises(ValueError):
        reconstruct_from_measure([], [])
    with pytest.raises(ValueError):
        reconstruct_from_measure([1.0, 0.0], [0.5, 0.5])
    with pytest.raises(ValueError):
        reconstruct_from_measure([0.0, 1.0], [0.5, 0.0])
    with pytest.raises(NumericalError, match="not realizable"):
        reconstruct_from_measure([0.0, 1.0, 2.0], [1.0, 1e-300, 1e-300])


def test_persymmetry():
    assert is_persymmetric(krawtchouk_chain(5))
    assert is_persymmetric(uniform_chain(8))
    J = uniform_chain(8)
    B = J.fields.copy()
    B[0] = 1e-3
    assert not is_persymmetric(JacobiMatrix(J.couplings, B), tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    n_sites=st.integers(2, 200),
    seed=st.integers(0, 2**32 - 1),
)
def test_weights_and_moments_property(n_sites, seed):
    J = random_chain(np.random.default_rng(seed), n_sites)
    S = eigendecompose(J)
    assert np.all(S.weights > 0)
    assert abs(S.weights.sum() - 1.0) <= 1e-12
    assert moments_check(S, J)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_family_chain_weights_and_moments(seed):
    J = random_family_chain(np.random.default_rng(seed), 200)
    S = eigendecompose(J)
    assert abs(S.weights.sum() - 1.0) <= 1e-12
    assert moments_check(S, J)


@settings(max_examples=25, deadline=None)
@given(n_sites=st.integers(2, 100), seed=st.integers(0, 2**32 - 1))
def test_round_trip_property(n_sites, seed):
    J = random_chain(np.random.default_rng(seed), n_sites, low=0.5, high=2.0)
    S = eigendecompose(J)
    R = reconstruct_from_measure(S.eigenvalues, S.weights)
    np.testing.assert_allclose(R.couplings, J.couplings, rtol=1e-10)
    np.testing.assert_allclose(R.fields, J.fields, atol=1e-10 * J.couplings.max())
