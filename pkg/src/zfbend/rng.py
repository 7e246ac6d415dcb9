"""Counter-based SplitMix64 streams.

Every random quantity in the package is a pure function of
``(seed, index, attempt, draw)``:

* the stream key is ``mix64(mix64(mix64(seed) + index) + attempt)``;
* draw ``j`` (0-based) of a stream is ``mix64(key + (j + 1) * 0x9E3779B97F4A7C15)``,
  i.e. the ``j``-th output of a SplitMix64 generator whose state is ``key``;
* a draw becomes a uniform on the open interval (0, 1) as
  ``((out >> 11) + 0.5) * 2**-53``.

``mix64`` is the SplitMix64 output finalizer (Steele, Lea & Flood, 2014).
All arithmetic is modulo 2**64.  The compiled kernels implement the same
recipe, so both backends see identical uniform sequences.
"""
import numpy as np

__all__ = ["GOLDEN", "mix64", "stream_key", "stream_keys", "uniforms"]

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z):
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def stream_key(seed, index=0, attempt=0):
    return mix64(mix64(mix64(seed) + index) + attempt)


def _mix64_array(z):
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def stream_keys(seed, indices, attempt=0):
    """Vectorized :func:`stream_key` over an integer array of indices."""
    idx = np.asarray(indices, dtype=np.uint64)
    base = np.full(idx.shape, mix64(seed), dtype=np.uint64)
    k = _mix64_array(base + idx)
    return _mix64_array(k + np.uint64(attempt & MASK))


def uniforms(keys, count):
    """Draws ``0..count-1`` of each stream as uniforms in (0, 1).

    ``keys`` may be a Python int or an array of keys; the result has shape
    ``np.shape(keys) + (count,)``.
    """
    keys = np.asarray(keys, dtype=np.uint64)[..., None]
    steps = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN)
    out = _mix64_array(keys + steps)
    return ((out >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53
