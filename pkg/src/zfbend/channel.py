"""Rayleigh channel draws, the ZF precoder and the channel power penalty."""
from dataclasses import dataclass
import math

import numpy as np

from .matrix_core import as_complex_mat, frobenius_sq, lu_invert
from .rng import stream_key, uniforms

__all__ = ["ChannelRealization", "Precoder", "complex_normals",
           "sample_rayleigh", "realize_channel", "zf_precoder"]


@dataclass(frozen=True)
class ChannelRealization:
    """A channel ``h``, its inverse and ``eta = ||h_inv||_F**2``."""
    h: np.ndarray
    h_inv: np.ndarray
    eta: float

    @property
    def n(self):
        return self.h.shape[0]


@dataclass(frozen=True)
class Precoder:
    v: np.ndarray


def complex_normals(u):
    """Map uniform pairs ``(..., 2k)`` to ``k`` CN(0, 1) values by Box-Muller.

    Pair ``(u1, u2)`` gives ``sqrt(-ln u1) * exp(2j*pi*u2)``: modulus squared
    is Exp(1), each real component has variance 1/2.
    """
    u = np.asarray(u, dtype=np.float64)
    radius = np.sqrt(-np.log(u[..., 0::2]))
    angle = 2.0 * np.pi * u[..., 1::2]
    return radius * np.cos(angle) + 1j * (radius * np.sin(angle))


def sample_rayleigh(n, seed, index=0, attempt=0):
    """Draw an ``n x n`` matrix with i.i.d. CN(0, 1) entries.

    Entries are filled row-major from stream ``(seed, index, attempt)``,
    entry ``j`` consuming draws ``2j`` and ``2j + 1``.  Monte Carlo sample
    ``i`` of the ZF estimator is exactly ``sample_rayleigh(n, seed, i)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    key = stream_key(seed, index, attempt)
    return complex_normals(uniforms(key, 2 * n * n)).reshape(n, n)


def realize_channel(h):
    h = as_complex_mat(h)
    h_inv = lu_invert(h)
    return ChannelRealization(h=h, h_inv=h_inv, eta=frobenius_sq(h_inv))


def zf_precoder(c):
    """Zero-forcing precoder ``V = H^-1 / ||H^-1||_F`` (unit Frobenius norm)."""
    return Precoder(v=c.h_inv / math.sqrt(c.eta))
