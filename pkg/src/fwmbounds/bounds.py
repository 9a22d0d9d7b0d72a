"""Closed-form and quadrature bounds on the wavelength-1 achievable rate.

Three bounds, all in bits/symbol:

  * upper_bound_awgn: log2(1 + p1/p_ase). Valid for any interferer
    statistics (conditioning on both interferers reduces wavelength 1 to
    an AWGN channel with a known, subtractable offset).
  * upper_bound_gaussian_interferers: valid only when both interferers
    are zero-mean circularly symmetric Gaussian. Conditioning on x2 gives
    an AWGN channel whose noise power is p_ase + eps^2 * p3 * |x2|^4, and
    |x2|^2 is exponential, leaving the 1-D integral
        (1/p2) Int_0^inf exp(-u/p2) log2(1 + p1/(p_ase + eps^2 p3 u^2)) du.
  * lower_bound_telatar: the Gaussian-equivalent rate of a ZCG input,
    log2(1 + p1/(eps^2 * p3 * E|X2|^4 + p_ase)), valid for any zero-mean
    interferer distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.integrate

from .errors import ParameterError, QuadratureError
from .link import ChannelParams
from .signals import InputSpec, fourth_moment

__all__ = [
    "QuadratureSettings",
    "upper_bound_awgn",
    "upper_bound_gaussian_interferers",
    "lower_bound_telatar",
]

# After substituting u = p2*t the weight is exp(-t); truncating at T = 60
# leaves a tail below exp(-60) * g(0) ~ 9e-27 * g(0), which is folded into
# the reported error budget.
_TAIL_CUT = 60.0

_laguerre_cache = {}


@dataclass(frozen=True)
class QuadratureSettings:
    """Controls for the exponential-weight integral.

    method: "adaptive-interval" (default) integrates exp(-t)*g(t) on
    [0, 60] with an adaptive subdivision rule; "generalized-laguerre"
    uses Gauss-Laguerre nodes as an independent cross-check.
    """

    method: str = "adaptive-interval"
    rel_tol: float = 1e-9
    max_subdivisions: int = 200
    laguerre_nodes: int = 150

    def __post_init__(self):
        if self.method not in ("adaptive-interval", "generalized-laguerre"):
            raise ParameterError(f"unknown quadrature method {self.method!r}")
        if not (0.0 < self.rel_tol <= 1e-2):
            raise ParameterError(f"rel_tol must be in (0, 1e-2], got {self.rel_tol}")
        if self.max_subdivisions < 16:
            raise ParameterError(
                f"max_subdivisions must be >= 16, got {self.max_subdivisions}"
            )
        if self.laguerre_nodes < 2:
            raise ParameterError(f"laguerre_nodes must be >= 2, got {self.laguerre_nodes}")


def upper_bound_awgn(p1: float, params: ChannelParams) -> float:
    """log2(1 + p1/p_ase); independent of the nonlinearity and interferers."""
    if p1 < 0 or not math.isfinite(p1):
        raise ParameterError(f"p1 must be finite and >= 0, got {p1}")
    return math.log2(1.0 + p1 / params.p_ase)


def _check_powers(**powers):
    for name, val in powers.items():
        if val < 0 or not math.isfinite(val):
            raise ParameterError(f"{name} must be finite and >= 0, got {val}")


def upper_bound_gaussian_interferers(
    p1: float,
    p2: float,
    p3: float,
    params: ChannelParams,
    q: QuadratureSettings | None = None,
) -> float:
    """Exponential-weight integral upper bound for ZCG interferers.

    Only valid when both interferers are zero-mean circularly symmetric
    Gaussian; the caller asserts the scenario. Never exceeds
    upper_bound_awgn(p1) since the integrand is bounded by it pointwise.

    Raises QuadratureError if the requested relative tolerance cannot be
    certified within max_subdivisions.
    """
    q = q or QuadratureSettings()
    _check_powers(p1=p1, p2=p2, p3=p3)
    pase, eps = params.p_ase, params.epsilon
    if p2 == 0.0 or eps == 0.0 or p3 == 0.0 or p1 == 0.0:
        # Interference term vanishes (or no signal); weight integrates to 1.
        return upper_bound_awgn(p1, params)

    scale = eps * eps * p3 * p2 * p2  # noise term becomes scale * t^2

    def g(t):
        return np.log2(1.0 + p1 / (pase + scale * t * t))

    if q.method == "generalized-laguerre":
        key = q.laguerre_nodes
        if key not in _laguerre_cache:
            _laguerre_cache[key] = np.polynomial.laguerre.laggauss(key)
        nodes, weights = _laguerre_cache[key]
        return float(weights @ g(nodes))

    # Knee of the integrand: below t_knee the log is flat near its peak,
    # above it the interference dominates. Passed to the integrator as a
    # breakpoint so sharp knees (strong nonlinearity) converge quickly.
    t_knee = math.sqrt(pase / scale)
    breakpoints = [t for t in (t_knee, 10.0 * t_knee) if 0.0 < t < _TAIL_CUT]
    val, abserr, info, *rest = scipy.integrate.quad(
        lambda t: math.exp(-t) * g(t),
        0.0,
        _TAIL_CUT,
        points=breakpoints or None,
        limit=q.max_subdivisions,
        epsrel=q.rel_tol,
        epsabs=0.0,
        full_output=1,
    )
    tail = math.exp(-_TAIL_CUT) * g(0.0)
    budget = abserr + tail
    if rest or budget > q.rel_tol * max(abs(val), 1e-300):
        raise QuadratureError(
            f"integral did not converge to rel_tol={q.rel_tol} within "
            f"{q.max_subdivisions} subdivisions (residual {budget:.3e})",
            residual=budget,
        )
    return float(val)


def lower_bound_telatar(
    p1: float,
    interferer2: InputSpec,
    interferer3_power: float,
    params: ChannelParams,
) -> float:
    """Gaussian-equivalent lower bound using interferer moments only.

    Requires a zero-mean interferer2 (all built-in shapes are). Depends on
    the third wavelength only through its power, hence the power argument.
    """
    _check_powers(p1=p1, interferer3_power=interferer3_power)
    m4 = fourth_moment(interferer2)
    denom = params.epsilon**2 * interferer3_power * m4 + params.p_ase
    return math.log2(1.0 + p1 / denom)
