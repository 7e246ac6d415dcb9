import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zfbend.channel import realize_channel, sample_rayleigh, zf_precoder
from zfbend.matrix_core import Singular, frobenius_sq, identity, lu_invert, mat_mul
from zfbend.rng import mix64, stream_key, stream_keys, uniforms


def test_splitmix_reference_vector():
    # First outputs of SplitMix64 seeded with 1234567 (published test vector).
    state = 1234567
    outs = []
    for _ in range(3):
        state = (state + 0x9E3779B97F4A7C15) % 2**64
        outs.append(mix64(state))
    assert outs == [6457827717110365317, 3203168211198807973, 9817491932198370423]


def test_stream_keys_match_scalar():
    idx = [0, 1, 7, 2**40]
    assert stream_keys(99, idx, 3).tolist() == [stream_key(99, i, 3) for i in idx]


def test_uniforms_open_interval():
    u = uniforms(stream_keys(0, np.arange(1000)), 16)
    assert u.min() > 0.0 and u.max() < 1.0


def test_sample_rayleigh_deterministic():
    assert np.array_equal(sample_rayleigh(4, 123), sample_rayleigh(4, 123))
    assert not np.array_equal(sample_rayleigh(4, 123), sample_rayleigh(4, 124))


def test_sample_rayleigh_rejects_zero():
    with pytest.raises(ValueError):
        sample_rayleigh(0, 1)


def test_sample_rayleigh_moments():
    # 10**5 entries pooled from 10**3 independent 10x10 draws.
    h = np.concatenate([sample_rayleigh(10, 77, i).ravel() for i in range(1000)])
    p = np.abs(h) ** 2
    assert abs(p.mean() - 1.0) < 3 * p.std(ddof=1) / math.sqrt(p.size)
    re2 = h.real ** 2
    var_re = re2.mean() - h.real.mean() ** 2
    assert abs(var_re - 0.5) < 3 * re2.std(ddof=1) / math.sqrt(h.size)


def test_realize_channel_simple():
    assert realize_channel(identity(2)).eta == 2.0
    assert realize_channel(np.diag([2.0, 1.0])).eta == 1.25


def test_realize_channel_cache_coherent():
    h = sample_rayleigh(4, 3)
    c = realize_channel(h)
    assert c.eta == frobenius_sq(lu_invert(h))
    assert c.eta > 0


def test_realize_channel_singular():
    with pytest.raises(Singular):
        realize_channel([[1, 2], [2, 4]])


def test_zf_identity():
    v = zf_precoder(realize_channel(identity(2))).v
    assert np.allclose(v, identity(2) / math.sqrt(2), rtol=0, atol=1e-15)


def test_zf_suppresses_interference():
    c = realize_channel(sample_rayleigh(4, 8))
    hv = mat_mul(c.h, zf_precoder(c).v)
    off = hv - np.diag(np.diag(hv))
    assert np.abs(off).max() < 1e-10
    d = np.diag(hv)
    assert np.abs(d - d[0]).max() < 1e-10
    assert np.abs(d - 1 / math.sqrt(c.eta)).max() < 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32), st.floats(0.05, 20))
def test_channel_properties(n, seed, alpha):
    h = sample_rayleigh(n, seed)
    if np.linalg.cond(h) > 1e8:
        return
    c = realize_channel(h)
    v = zf_precoder(c).v
    assert abs(frobenius_sq(v) - 1) < 1e-12
    assert np.abs(h @ v - identity(n) / math.sqrt(c.eta)).max() < 1e-10
    scaled = realize_channel(alpha * h).eta
    assert abs(scaled - c.eta / alpha ** 2) <= 1e-10 * scaled
    again = realize_channel(sample_rayleigh(n, seed))
    assert again.eta == c.eta and np.array_equal(again.h_inv, c.h_inv)
