"""Pure numpy Monte Carlo kernels, used when the compiled core is unavailable.

Each kernel evaluates samples ``start..stop-1`` and returns the chunk
statistics ``(count, mean, m2)`` (plus the resample count for ZF), where
``m2`` is the sum of squared deviations from the chunk mean.
"""
import numpy as np

from .channel import complex_normals, sample_rayleigh
from .matrix_core import SINGULAR_RTOL, Singular, lu_invert
from .rng import stream_keys, uniforms

NAME = "python"


def _stats(values):
    k = values.shape[0]
    mean = float(values.sum()) / k
    dev = values - mean
    return k, mean, float(np.dot(dev, dev))


def exp_chunk(rho, n, seed, start, stop):
    x = 10.0 ** (rho / 10.0)
    keys = stream_keys(seed, np.arange(start, stop, dtype=np.uint64))
    g = -np.log(uniforms(keys, 1)[:, 0])
    return _stats(n * np.log1p(x * g / n))


def batched_eta(h):
    """``||H^-1||_F**2`` for a stack ``(B, n, n)`` of matrices.

    Vectorized LU with partial pivoting, same singularity rule as
    :func:`zfbend.matrix_core.lu_invert`.  Returns ``(eta, singular)``;
    ``eta`` is meaningless where ``singular`` is set.
    """
    a = np.array(h, dtype=np.complex128)
    b, n, _ = a.shape
    rows = np.arange(b)
    colmax = np.abs(a).max(axis=1)
    perm = np.tile(np.arange(n), (b, 1))
    singular = np.zeros(b, dtype=bool)

    for k in range(n):
        mag = np.abs(a[:, k:, k])
        p = k + np.argmax(mag, axis=1)
        piv = mag.max(axis=1)
        singular |= (piv == 0.0) | (piv < SINGULAR_RTOL * colmax[:, k])
        kk = np.full(b, k)
        a[rows, kk], a[rows, p] = a[rows, p], a[rows, kk]
        perm[rows, kk], perm[rows, p] = perm[rows, p], perm[rows, kk]
        pivot = np.where(singular, 1.0, a[:, k, k])
        a[:, k + 1:, k] /= pivot[:, None]
        a[:, k + 1:, k + 1:] -= a[:, k + 1:, k, None] * a[:, k, None, k + 1:]

    x = np.eye(n, dtype=np.complex128)[perm]
    for i in range(1, n):
        x[:, i] -= np.einsum("bj,bjc->bc", a[:, i, :i], x[:, :i])
    diag = np.where(singular[:, None], 1.0, a[:, np.arange(n), np.arange(n)])
    for i in range(n - 1, -1, -1):
        x[:, i] = (x[:, i] - np.einsum("bj,bjc->bc", a[:, i, i + 1:], x[:, i + 1:])) / diag[:, i, None]
    eta = (x.real ** 2 + x.imag ** 2).sum(axis=(1, 2))
    return eta, singular


def zf_chunk(rho, n, seed, start, stop):
    x = 10.0 ** (rho / 10.0)
    idx = np.arange(start, stop, dtype=np.uint64)
    h = complex_normals(uniforms(stream_keys(seed, idx), 2 * n * n)).reshape(-1, n, n)
    eta, singular = batched_eta(h)
    resampled = 0
    for j in np.flatnonzero(singular):
        attempt = 0
        while True:
            attempt += 1
            resampled += 1
            try:
                inv = lu_invert(sample_rayleigh(n, seed, start + int(j), attempt))
            except Singular:
                continue
            eta[j] = float((inv.real ** 2 + inv.imag ** 2).sum())
            break
    count, mean, m2 = _stats(n * np.log1p(x / eta))
    return count, mean, m2, resampled
