"""Dense complex linear algebra on small numpy arrays.

Machines in this package have a few dozen states at most, so everything
here is a naive dense operation on ``complex128`` data.  All functions are
pure: arguments are never modified.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError

# Plain numpy arrays serve as the vector/matrix types throughout the package:
# shape (n,) for vectors, (rows, cols) for matrices.
ComplexVector = np.ndarray
ComplexMatrix = np.ndarray


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.conjugate(np.asarray(m)).T


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Matrix product, with an explicit error on mismatched inner dimensions."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError("matmul expects two matrices")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def apply(m: ComplexMatrix, v: ComplexVector) -> ComplexVector:
    """Matrix-vector product, with an explicit error on mismatched dimensions."""
    m = np.asarray(m)
    v = np.asarray(v)
    if m.ndim != 2 or v.ndim != 1:
        raise ShapeError("apply expects a matrix and a vector")
    if m.shape[1] != v.shape[0]:
        raise ShapeError(f"cannot apply {m.shape} to a vector of length {v.shape[0]}")
    return m @ v


def norm_sq(v: ComplexVector) -> float:
    """Squared Euclidean norm; real and non-negative."""
    v = np.asarray(v)
    return float(np.real(np.vdot(v, v)))


def unitary_deviation(m: ComplexMatrix) -> float:
    """Largest entry magnitude of M†M − I.  Requires a square matrix."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"unitarity is only defined for square matrices, got {m.shape}")
    gram = dagger(m) @ m
    return float(np.max(np.abs(gram - np.eye(m.shape[0]))))


def is_unitary(m: ComplexMatrix, tol: float = 1e-9) -> bool:
    """Whether the max-entry deviation of M†M from the identity is within tol."""
    return unitary_deviation(m) <= tol


def entries_finite(a) -> bool:
    """True when every entry is finite (both parts, for complex data)."""
    return bool(np.all(np.isfinite(np.asarray(a))))
