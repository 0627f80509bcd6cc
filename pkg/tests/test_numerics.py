"""Property-based tests for the Hermitian matrix kernels."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicopy import numerics


def random_hermitian(seed: int, dim: int, psd: bool = False) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    if psd:
        return a @ a.conj().T / dim
    return 0.5 * (a + a.conj().T)


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 128))
@settings(max_examples=30, deadline=None)
def test_eigh_reconstructs(seed, dim):
    a = random_hermitian(seed, dim)
    spec = numerics.eigh(a)
    assert np.max(np.abs(spec.reconstruct() - a)) <= 1e-10 * max(1.0, np.abs(a).max())
    assert np.all(np.diff(spec.eigenvalues) <= 1e-12)


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 32))
@settings(max_examples=30, deadline=None)
def test_sqrtm_squares_back(seed, dim):
    a = random_hermitian(seed, dim, psd=True)
    root = numerics.sqrtm_psd(a)
    assert np.max(np.abs(root @ root - a)) <= 1e-8 * max(1.0, np.abs(a).max())


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 32))
@settings(max_examples=30, deadline=None)
def test_pinv_is_inverse_on_support(seed, dim):
    a = random_hermitian(seed, dim, psd=True)
    pinv = numerics.pinv_psd(a)
    # a @ pinv @ a == a
    assert np.max(np.abs(a @ pinv @ a - a)) <= 1e-8 * max(1.0, np.abs(a).max())


@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 16))
@settings(max_examples=30, deadline=None)
def test_trace_norm_dominates_trace(seed, dim):
    a = random_hermitian(seed, dim)
    assert numerics.trace_norm(a) >= abs(np.real(np.trace(a))) - 1e-10


@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.normal(size=(2, 2)) for _ in range(3))
    left = numerics.kron(numerics.kron(a, b), c)
    right = numerics.kron(a, numerics.kron(b, c))
    assert np.max(np.abs(left - right)) <= 1e-12


def test_tensor_power_dimensions():
    a = np.eye(2)
    assert numerics.tensor_power(a, 3).shape == (8, 8)
    with pytest.raises(ValueError):
        numerics.tensor_power(a, 0)


def test_non_hermitian_rejected():
    with pytest.raises(numerics.NotHermitianError):
        numerics.eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_negative_matrix_rejected_by_sqrt():
    with pytest.raises(numerics.NotPsdError):
        numerics.sqrtm_psd(-np.eye(2))


def test_clamp_keeps_tiny_negatives():
    a = np.diag([1.0, -1e-12])
    root = numerics.sqrtm_psd(a)
    assert np.allclose(root, np.diag([1.0, 0.0]))
