"""Ergodic ZF sum-rate in Rayleigh fading and its intercept/bend point.

The closed form is ``R_E(rho) = n * e**z * E1(z)`` with ``z = n * 10**(-rho/10)``,
the expectation of ``n*ln(1 + 10**(rho/10) * g / n)`` over ``g ~ Exp(1)``.
"""
import math

from .rate_deterministic import C_DB, golden_section_max

__all__ = ["EULER_GAMMA", "RATE_PER_ANTENNA_AT_INTERCEPT", "exp_integral_e1",
           "exp_scaled_e1", "ergodic_rate", "ergodic_derivative",
           "ergodic_asymptote", "ergodic_intercept",
           "rate_at_ergodic_intercept", "ergodic_bend_numeric"]

EULER_GAMMA = 0.57721566490153286061

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_ITER = 500


def _e1_series(x):
    # -gamma - ln x + sum_{k>=1} (-1)**(k+1) x**k / (k * k!)
    term = x
    total = x
    k = 1
    while True:
        k += 1
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < _EPS * abs(total) or k > _MAX_ITER:
            break
    return -EULER_GAMMA - math.log(x) + total


def _e1_cf_scaled(x):
    # e**x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))), modified Lentz.
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if d == 0.0:
            d = _TINY
        d = 1.0 / d
        c = b + an / c
        if c == 0.0:
            c = _TINY
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"E1 continued fraction did not converge at x={x}")


def _check_positive(x):
    if not x > 0:
        raise ValueError(f"E1 is only defined here for x > 0, got {x}")


def exp_integral_e1(x):
    """Exponential integral ``E1(x) = int_x^inf e**-t / t dt`` for ``x > 0``.

    Power series up to ``x = 1``, continued fraction beyond.
    """
    _check_positive(x)
    if x <= 1.0:
        return _e1_series(x)
    return math.exp(-x) * _e1_cf_scaled(x)


def exp_scaled_e1(x):
    """``e**x * E1(x)``, finite for every ``x > 0`` (tends to ``1/x``)."""
    _check_positive(x)
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    if math.isinf(x):
        return 0.0
    return _e1_cf_scaled(x)


def _z(rho, n):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * 10.0 ** (-rho / 10.0)


def ergodic_rate(rho, n):
    """Ergodic sum-rate in nats, ``n * e**z * E1(z)``."""
    z = _z(rho, n)
    if z == 0.0:
        raise OverflowError(f"rho={rho} dB is beyond double range")
    return n * exp_scaled_e1(z)


def ergodic_derivative(rho, n, order):
    """First or second derivative of :func:`ergodic_rate` in nats/dB**order.

    With ``f(z) = e**z E1(z)`` and ``dz/drho = -c z``:

    * order 1: ``n*c*(1 - z*f)``
    * order 2: ``n*c**2*z*((1 + z)*f - 1)``
    """
    if order not in (1, 2):
        raise ValueError(f"order must be 1 or 2, got {order!r}")
    z = _z(rho, n)
    f = exp_scaled_e1(z)
    if order == 1:
        return n * C_DB * (1.0 - z * f)
    return n * C_DB ** 2 * z * ((1.0 + z) * f - 1.0)


def ergodic_asymptote(rho, n):
    """High-SNR line ``n*(c*rho - gamma - ln n)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * (C_DB * rho - EULER_GAMMA - math.log(n))


def ergodic_intercept(n):
    """SNR (dB) where the ergodic asymptote crosses zero."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 10.0 * (EULER_GAMMA + math.log(n)) / math.log(10.0)


#: e**(e**-gamma) * E1(e**-gamma), the per-antenna rate at the intercept.
RATE_PER_ANTENNA_AT_INTERCEPT = exp_scaled_e1(math.exp(-EULER_GAMMA))


def rate_at_ergodic_intercept(n):
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * RATE_PER_ANTENNA_AT_INTERCEPT


def ergodic_bend_numeric(n, half_width=40.0, tol=1e-6):
    """SNR (dB) maximizing the ergodic second derivative, by golden section.

    The search bracket is centred on :func:`ergodic_intercept`.
    """
    rho_int = ergodic_intercept(n)
    return golden_section_max(lambda rho: ergodic_derivative(rho, n, 2),
                              rho_int - half_width, rho_int + half_width, tol=tol)
