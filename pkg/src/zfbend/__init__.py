"""Bend point and ergodic sum-rate analysis for zero-forcing multiuser MIMO."""
from ._backend import BACKEND
from .channel import realize_channel, sample_rayleigh, zf_precoder
from .ergodic import (ergodic_asymptote, ergodic_bend_numeric, ergodic_intercept,
                      ergodic_rate, exp_integral_e1, rate_at_ergodic_intercept)
from .matrix_core import Singular, frobenius_sq, lu_invert, mat_mul
from .montecarlo import compare, mc_ergodic_exponential, mc_ergodic_zf
from .rate_deterministic import (BendResult, bend_point_analytic, bend_point_numeric,
                                 high_snr_asymptote, intercept, rate_derivative, sum_rate)

__version__ = "0.1.0"
