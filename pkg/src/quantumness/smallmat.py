"""Small dense linear algebra kernel (2x2 and 3x3 matrices).

Thin, validated wrappers around numpy.linalg used by the rest of the
package: Hermitian eigensolves, trace norms, PSD square roots, guarded
inverses and spectral radii.  All functions are pure and thread-safe.
"""

from __future__ import annotations

import numpy as np

HERMITICITY_TOL = 1e-10
PSD_EIG_FLOOR = -1e-12
# determinant threshold relative to ||A||_2^dim; separates genuine model
# singularities (theta -> 0, r -> 1) from round-off
SINGULARITY_RTOL = 1e-14


class SingularMatrixError(ValueError):
    """Matrix is numerically singular; carries the determinant magnitude."""

    def __init__(self, det_magnitude: float):
        self.det_magnitude = float(det_magnitude)
        super().__init__(f"matrix is numerically singular (|det| = {det_magnitude:.3e})")


def _as_small_square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in (2, 3):
        raise ValueError(f"expected a 2x2 or 3x3 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def herm_eig(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvector columns of Hermitian h."""
    h = _as_small_square(h)
    dev = np.abs(h - h.conj().T).max()
    if dev > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def trace_norm(a) -> float:
    """Trace norm ||a||_1 = Tr sqrt(a^dag a) = sum of singular values."""
    a = _as_small_square(a)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def psd_sqrt(w) -> np.ndarray:
    """Symmetric PSD square root of a real symmetric PSD matrix."""
    w = _as_small_square(w)
    if np.abs(w - w.T).max() > 1e-12:
        raise ValueError("matrix is not symmetric")
    evals, vecs = np.linalg.eigh(w)
    if evals.min() < PSD_EIG_FLOOR:
        raise ValueError(f"matrix is not PSD (min eigenvalue {evals.min():.3e})")
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.T


def inverse(a) -> np.ndarray:
    """Inverse with a determinant guard; raises SingularMatrixError when ill-posed."""
    a = _as_small_square(a)
    det = np.linalg.det(a)
    norm = np.linalg.norm(a, 2)
    if abs(det) <= SINGULARITY_RTOL * norm ** a.shape[0]:
        raise SingularMatrixError(abs(det))
    return np.linalg.inv(a)


def largest_abs_eig(a) -> float:
    """Largest eigenvalue magnitude max_k |eig_k(a)|."""
    a = _as_small_square(a)
    return float(np.abs(np.linalg.eigvals(a)).max())
