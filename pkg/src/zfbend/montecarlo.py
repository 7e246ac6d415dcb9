"""Seeded Monte Carlo estimates of the ergodic sum-rate.

Two models:

* ``mc_ergodic_exponential``: average of ``n*ln(1 + x*g/n)`` over
  ``g = -ln(u) ~ Exp(1)``, the integrand behind the closed-form ergodic rate;
* ``mc_ergodic_zf``: average of ``n*ln(1 + x/eta)`` over Rayleigh channels
  ``H`` with ``eta = ||H^-1||_F**2``, i.e. the exact ZF rate.

Sample ``i`` draws from its own counter stream ``(seed, i)``, so the samples
do not depend on how the work is split.  Samples are grouped into fixed
chunks of ``CHUNK`` consecutive indices; chunk statistics are merged in index
order, which keeps the reported mean bit-identical for any ``workers``.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import math

from ._backend import get_kernels
from .matrix_core import SINGULAR_RTOL

__all__ = ["CHUNK", "McEstimate", "Comparison", "mc_ergodic_exponential",
           "mc_ergodic_zf", "compare"]

CHUNK = 1 << 14


@dataclass(frozen=True)
class McEstimate:
    """Sample mean and standard error (nats) of a Monte Carlo run.

    ``resampled`` counts singular channel draws that had to be redrawn; it is
    expected to stay 0.
    """
    mean: float
    stderr: float
    samples: int
    seed: int
    resampled: int = 0


@dataclass(frozen=True)
class Comparison:
    abs_diff: float
    z_score: float


def _merge(acc, part):
    na, ma, qa = acc
    nb, mb, qb = part
    n = na + nb
    d = mb - ma
    return n, ma + d * nb / n, qa + qb + d * d * na * nb / n


def _run(chunk_fn, samples, workers):
    bounds = [(s, min(s + CHUNK, samples)) for s in range(0, samples, CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: chunk_fn(*b), bounds))
    else:
        parts = [chunk_fn(*b) for b in bounds]
    acc = parts[0][:3]
    for part in parts[1:]:
        acc = _merge(acc, part[:3])
    extra = sum(p[3] for p in parts) if len(parts[0]) > 3 else 0
    return acc, extra


def _validate(n, samples, workers):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if samples < 2:
        raise ValueError(f"samples must be >= 2 for a standard error, got {samples}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")


def _estimate(stats, seed, resampled=0):
    count, mean, m2 = stats
    return McEstimate(mean=mean, stderr=math.sqrt(m2 / (count - 1) / count),
                      samples=count, seed=seed, resampled=resampled)


def mc_ergodic_exponential(rho, n, samples, seed, workers=1, backend=None):
    _validate(n, samples, workers)
    k = get_kernels(backend)
    stats, _ = _run(lambda a, b: k.exp_chunk(rho, n, seed, a, b), samples, workers)
    return _estimate(stats, seed)


def mc_ergodic_zf(rho, n, samples, seed, workers=1, backend=None):
    """Exact ZF sum-rate averaged over i.i.d. CN(0, 1) channels.

    Draw ``i`` is ``channel.sample_rayleigh(n, seed, i)``; a singular draw is
    replaced by attempt 1, 2, ... of the same index and counted in
    ``resampled``.
    """
    _validate(n, samples, workers)
    k = get_kernels(backend)
    if k.NAME == "cython":
        fn = lambda a, b: k.zf_chunk(rho, n, seed, a, b, SINGULAR_RTOL)
    else:
        fn = lambda a, b: k.zf_chunk(rho, n, seed, a, b)
    stats, resampled = _run(fn, samples, workers)
    return _estimate(stats, seed, resampled)


def compare(est, analytic):
    """Distance of an estimate from a reference value, in nats and in stderrs."""
    if not est.stderr > 0:
        raise ValueError("cannot compare an estimate with zero standard error")
    diff = abs(est.mean - analytic)
    return Comparison(abs_diff=diff, z_score=diff / est.stderr)
