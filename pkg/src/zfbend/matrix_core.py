"""Dense complex square matrices: product, LU inversion, Frobenius norm.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(N, N)``, row-major.  The LU inversion is written out by hand (Doolittle
with partial pivoting) so that singularity detection follows a fixed,
scale-aware rule instead of whatever LAPACK happens to do.
"""
import math

import numpy as np

__all__ = ["Singular", "SINGULAR_RTOL", "as_complex_mat", "identity",
           "mat_mul", "lu_invert", "frobenius_sq"]

# Relative pivot threshold, scaled by the largest magnitude in the pivot column
# of the original matrix.
SINGULAR_RTOL = 1e-12


class Singular(ValueError):
    """Raised when LU elimination meets a pivot below the singularity threshold.

    Attributes
    ----------
    index : int
        Elimination step (column) where the pivot failed.
    pivot : float
        Magnitude of the rejected pivot.
    """

    def __init__(self, index, pivot):
        super().__init__(f"matrix is singular: pivot {index} has magnitude {pivot:.3e}")
        self.index = index
        self.pivot = pivot


def as_complex_mat(m):
    """Validate ``m`` and return it as a square, finite complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def identity(n):
    if n < 1:
        raise ValueError("matrix dimension must be at least 1")
    return np.eye(n, dtype=np.complex128)


def mat_mul(a, b):
    a = as_complex_mat(a)
    b = as_complex_mat(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def lu_invert(m):
    """Invert ``m`` by LU decomposition with partial pivoting.

    Elimination step ``k`` raises :class:`Singular` when the chosen pivot has
    magnitude not above ``SINGULAR_RTOL * max_i |m[i, k]|`` (column maximum of
    the input), or when the whole column is zero.

    Returns
    -------
    numpy.ndarray
        The inverse, complex128 of the same shape.
    """
    a = as_complex_mat(m).copy()
    n = a.shape[0]
    colmax = np.abs(a).max(axis=0)
    perm = np.arange(n)

    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = abs(a[p, k])
        if piv == 0.0 or piv < SINGULAR_RTOL * colmax[k]:
            raise Singular(k, piv)
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])

    # Solve L U X = P, one row of X at a time.
    x = np.eye(n, dtype=np.complex128)[perm]
    for i in range(1, n):
        x[i] -= a[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - a[i, i + 1:] @ x[i + 1:]) / a[i, i]
    return x


def frobenius_sq(m):
    """Squared Frobenius norm, sum of ``re**2 + im**2`` over all entries.

    The sum is correctly rounded (``math.fsum``), so the result does not
    depend on entry order.
    """
    a = as_complex_mat(m).ravel()
    return math.fsum(np.concatenate([a.real * a.real, a.imag * a.imag]).tolist())
