"""Sum-rate of a fixed ZF-precoded channel and its bend point.

SNR ``rho`` is in dB everywhere and derivatives are taken with respect to
dB.  With ``c = ln(10)/10`` and ``x = 10**(rho/10)`` the rate is

    R(rho) = n * ln(1 + x/eta)

Writing ``s = c*rho - ln(eta)`` (so that ``x/eta = e**s``), ``R = n*softplus(s)``
and every derivative is a polynomial in the logistic ``sigma(s)``.  That form
is what gets evaluated: it cannot overflow, and ``R''`` is exactly even in
``s`` around the intercept.
"""
from dataclasses import dataclass
import math

__all__ = ["C_DB", "BendResult", "sum_rate", "rate_derivative",
           "third_derivative_expanded", "high_snr_asymptote", "intercept",
           "bend_point_analytic", "bend_point_numeric", "default_bracket",
           "golden_section_max", "central_difference", "second_difference"]

#: Natural-log nats per dB of SNR, ln(10)/10.
C_DB = math.log(10.0) / 10.0

#: Central-difference step used by the finite-difference cross-checks, in dB.
FD_STEP_DB = 1e-3

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class BendResult:
    """Bend point of a rate curve.

    ``rho_bend``/``rho_int`` in dB, ``rate_at_bend`` in nats, ``r2_max`` in
    nats/dB**2.
    """
    rho_bend: float
    rho_int: float
    rate_at_bend: float
    r2_max: float


def _check(eta, n):
    if not eta > 0 or not math.isfinite(eta):
        raise ValueError(f"eta must be a positive finite number, got {eta}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def _log_snr_ratio(rho, eta):
    return C_DB * rho - math.log(eta)


def _sigmoid(s):
    if s >= 0:
        return 1.0 / (1.0 + math.exp(-s))
    e = math.exp(s)
    return e / (1.0 + e)


def sum_rate(rho, eta, n):
    """ZF sum-rate ``n*ln(1 + 10**(rho/10)/eta)`` in nats."""
    _check(eta, n)
    s = _log_snr_ratio(rho, eta)
    return n * (max(s, 0.0) + math.log1p(math.exp(-abs(s))))


def rate_derivative(rho, eta, n, order):
    """Derivative of :func:`sum_rate` with respect to ``rho`` (dB).

    Closed forms, with ``u = x/(eta + x)`` and ``t = eta/(eta + x)``:

    * order 1: ``n*c*u``
    * order 2: ``n*c**2*u*t``
    * order 3: ``n*c**3*u*t*(t - u)``
    """
    _check(eta, n)
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order!r}")
    s = _log_snr_ratio(rho, eta)
    u = _sigmoid(s)
    t = _sigmoid(-s)
    if order == 1:
        return n * C_DB * u
    if order == 2:
        return n * C_DB ** 2 * u * t
    return n * C_DB ** 3 * u * t * (t - u)


def third_derivative_expanded(rho, eta, n):
    """Third derivative in the original, unsimplified arrangement.

    ``n/eta**2 * c**3 * (eta*x - x**2) / (1 + x/eta)**3``.  Only meant as a
    transcription cross-check of :func:`rate_derivative`; overflows for large
    ``rho``.
    """
    _check(eta, n)
    x = 10.0 ** (rho / 10.0)
    x2 = 10.0 ** (2.0 * rho / 10.0)
    return n / eta ** 2 * C_DB ** 3 * (eta * x - x2) / (1.0 + x / eta) ** 3


def high_snr_asymptote(rho, eta, n):
    """High-SNR line ``n*ln(x/eta)``; negative below the intercept."""
    _check(eta, n)
    return n * _log_snr_ratio(rho, eta)


def intercept(eta):
    """SNR (dB) where the high-SNR asymptote crosses zero: ``10*log10(eta)``."""
    _check(eta, 1)
    return 10.0 * math.log10(eta)


def bend_point_analytic(eta, n):
    rho = intercept(eta)
    return BendResult(
        rho_bend=rho,
        rho_int=rho,
        rate_at_bend=sum_rate(rho, eta, n),
        r2_max=rate_derivative(rho, eta, n, 2),
    )


def golden_section_max(f, a, b, tol=1e-6):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns the bracket midpoint.

    Stops once the bracket is narrower than ``tol``.
    """
    if not b - a > 0:
        raise ValueError(f"degenerate bracket [{a}, {b}]")
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def default_bracket(eta, half_width=40.0):
    rho = intercept(eta)
    return (rho - half_width, rho + half_width)


def bend_point_numeric(second_deriv, bracket, tol=1e-6):
    """SNR (dB) maximizing ``second_deriv`` inside ``bracket``.

    ``second_deriv`` must be unimodal on the bracket, which holds for any
    rate of the form ``n*ln(1 + x/eta)``.
    """
    a, b = bracket
    return golden_section_max(second_deriv, a, b, tol=tol)


def central_difference(f, rho, h=FD_STEP_DB):
    return (f(rho + h) - f(rho - h)) / (2.0 * h)


def second_difference(f, rho, h=FD_STEP_DB):
    return (f(rho + h) - 2.0 * f(rho) + f(rho - h)) / (h * h)
