"""Dense complex linear algebra used by the engine modules."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, NormalizationError, NotPSDError, ShapeError

HERMITIAN_TOL = 1e-10
EIGENVALUE_TOL = 1e-10


def as_vector(x) -> np.ndarray:
    """Validate and return a finite 1-d complex128 array."""
    a = np.asarray(x, dtype=np.complex128)
    if a.ndim != 1 or a.shape[0] < 1:
        raise ShapeError(f"expected a 1-d vector, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise InvalidInputError("vector entries must be finite")
    return a


def as_matrix(m) -> np.ndarray:
    """Validate and return a finite 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ShapeError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise InvalidInputError("matrix entries must be finite")
    return a


def max_abs(m) -> float:
    return float(np.max(np.abs(m)))


def spectral_norm(m) -> float:
    """Largest singular value of a (possibly rectangular) matrix."""
    return float(np.linalg.norm(as_matrix(m), 2))


def is_unitary(m, tol: float) -> bool:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"unitarity is only defined for square matrices, got {a.shape}")
    return max_abs(a.conj().T @ a - np.eye(a.shape[0])) <= tol


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-10, 0) are clamped to zero; anything more negative
    means the input is not numerically PSD and raises.
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got {a.shape}")
    if max_abs(a - a.conj().T) > HERMITIAN_TOL:
        raise InvalidInputError(
            f"matrix is not Hermitian within {HERMITIAN_TOL:g} (max asymmetry "
            f"{max_abs(a - a.conj().T):.3e})"
        )
    h = (a + a.conj().T) / 2
    w, v = np.linalg.eigh(h)
    if w.min() < -EIGENVALUE_TOL:
        raise NotPSDError(f"eigenvalue {w.min():.3e} below -{EIGENVALUE_TOL:g}")
    w = np.clip(w, 0.0, None)
    s = (v * np.sqrt(w)) @ v.conj().T
    return (s + s.conj().T) / 2


def completion_unitary(v) -> np.ndarray:
    """Unitary whose first column is the given unit vector.

    The remaining columns come from orthonormalizing standard basis vectors
    against v (the basis vector at v's largest component is dropped so the
    starting set is always independent).
    """
    x = as_vector(v)
    nrm = np.linalg.norm(x)
    if nrm < 1e-12:
        raise NormalizationError("cannot complete a (near-)zero vector to a unitary")
    x = x / nrm
    d = x.shape[0]
    pivot = int(np.argmax(np.abs(x)))
    cols = np.zeros((d, d), dtype=np.complex128)
    cols[:, 0] = x
    rest = [i for i in range(d) if i != pivot]
    for k, i in enumerate(rest, start=1):
        cols[i, k] = 1.0
    q, _ = np.linalg.qr(cols)
    q = np.ascontiguousarray(q)
    # qr fixes the first column only up to phase; pin it to x exactly
    q[:, 0] = x
    return q
