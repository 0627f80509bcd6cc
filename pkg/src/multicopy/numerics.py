"""Dense Hermitian matrix kernels used throughout the package.

Everything here is a thin, validated layer over numpy's LAPACK bindings:
eigendecomposition with a fixed (descending) eigenvalue order, PSD square
root and pseudo-inverse with a single shared rank tolerance, trace norm,
and Kronecker products for building tensor powers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Default tolerance for PSD checks and rank decisions (pseudo-inverse support).
DEFAULT_TOL = 1e-10

HERMITICITY_TOL = 1e-12


class NotHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NotPsdError(ValueError):
    """Input matrix has an eigenvalue below the allowed negative tolerance."""


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and sorted descending; eigenvectors[:, i] is the
    orthonormal eigenvector for eigenvalues[i].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_hermitian(a, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate Hermiticity and return the symmetrized complex matrix."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {a.shape}")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from Hermiticity by {dev:.3e}")
    return 0.5 * (a + a.conj().T)


def eigh(a) -> Spectrum:
    """Eigendecomposition with eigenvalues sorted descending."""
    a = as_hermitian(a)
    vals, vecs = np.linalg.eigh(a)
    return Spectrum(eigenvalues=vals[::-1].copy(), eigenvectors=vecs[:, ::-1].copy())


def sqrtm_psd(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a PSD matrix.

    Eigenvalues in [-tol, tol] are clamped to zero; anything below -tol
    raises NotPsdError.
    """
    spec = eigh(a)
    vals = spec.eigenvalues
    if vals.size and vals[-1] < -tol:
        raise NotPsdError(f"minimum eigenvalue {vals[-1]:.3e} below -{tol:.1e}")
    clamped = np.where(vals < tol, 0.0, vals)
    v = spec.eigenvectors
    root = (v * np.sqrt(clamped)) @ v.conj().T
    return 0.5 * (root + root.conj().T)


def pinv_psd(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of a PSD matrix, with support cut at tol."""
    spec = eigh(a)
    vals = spec.eigenvalues
    if vals.size and vals[-1] < -tol:
        raise NotPsdError(f"minimum eigenvalue {vals[-1]:.3e} below -{tol:.1e}")
    inv = np.where(vals > tol, 1.0 / np.where(vals > tol, vals, 1.0), 0.0)
    v = spec.eigenvectors
    out = (v * inv) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    a = as_hermitian(a)
    return float(np.sum(np.abs(np.linalg.eigvalsh(a))))


def kron(a, b) -> np.ndarray:
    """Kronecker product (row-major, left factor outermost)."""
    return np.kron(np.asarray(a), np.asarray(b))


def tensor_power(a, k: int) -> np.ndarray:
    """k-fold Kronecker power of a matrix."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = np.asarray(a)
    for _ in range(k - 1):
        out = np.kron(out, a)
    return out
