"""Discrete-time three-wavelength four-wave-mixing channel.

Forward model (complex amplitudes, independent circular Gaussian noises of
power p_ase each):

    y1 = x1 + eps * x2^2 * conj(x3)     + n1
    y2 = x2 + 2 * eps * x1 * conj(x2) * x3 + n2
    y3 = x3 + eps * conj(x1) * x2^2     + n3

All densities are natural-log; conversion to bits happens at the
reporting boundary. Every function here is pure and re-entrant; sampling
takes an explicit generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .link import ChannelParams
from .signals import sample_zcg

__all__ = [
    "ChannelSample",
    "fwm_term",
    "propagate",
    "log_density_y1_given_all",
    "log_mixture_density",
]

# Cap on exponent-matrix entries per chunk (memory bound, not statistics).
_CHUNK_ENTRIES = 1 << 21


def fwm_term(epsilon, x2, x3):
    """Interference seen by wavelength 1: eps * x2^2 * conj(x3)."""
    return epsilon * x2 * x2 * np.conj(x3)


@dataclass(frozen=True)
class ChannelSample:
    """One propagation record; y1 = x1 + fwm + n1 holds by construction."""

    x1: complex
    x2: complex
    x3: complex
    n1: complex
    n2: complex
    n3: complex
    y1: complex
    y2: complex
    y3: complex


def propagate(params: ChannelParams, x1, x2, x3, rng: np.random.Generator) -> ChannelSample:
    """Sample the channel once. Noise draw order is fixed: n1, n2, n3."""
    eps = params.epsilon
    n1 = complex(sample_zcg(rng, params.p_ase))
    n2 = complex(sample_zcg(rng, params.p_ase))
    n3 = complex(sample_zcg(rng, params.p_ase))
    x1, x2, x3 = complex(x1), complex(x2), complex(x3)
    y1 = x1 + eps * x2 * x2 * x3.conjugate() + n1
    y2 = x2 + 2.0 * eps * x1 * x2.conjugate() * x3 + n2
    y3 = x3 + eps * x1.conjugate() * x2 * x2 + n3
    return ChannelSample(x1=x1, x2=x2, x3=x3, n1=n1, n2=n2, n3=n3, y1=y1, y2=y2, y3=y3)


def log_density_y1_given_all(params: ChannelParams, y1, x1, x2, x3):
    """log f(y1 | x1, x2, x3) in nats.

    The conditional law is complex Gaussian with mean x1 + eps*x2^2*conj(x3)
    and total variance p_ase.
    """
    mean = x1 + fwm_term(params.epsilon, x2, x3)
    d2 = np.abs(np.asarray(y1) - mean) ** 2
    return -np.log(np.pi * params.p_ase) - d2 / params.p_ase


def log_mixture_density(y1, centers, variance):
    """log of an equal-weight complex-Gaussian mixture, in nats.

    Evaluates log[ 1/(pi*variance*K) * sum_k exp(-|y1 - c_k|^2 / variance) ]
    by max-subtracted log-sum-exp, so exponents down to -1e6 stay finite.

    Args:
        y1: complex scalar or 1-D array of evaluation points.
        centers: non-empty 1-D array of mixture centers.
        variance: total complex variance of each component, > 0.

    Returns:
        Scalar for scalar y1, else an array matching y1's length.
    """
    c = np.asarray(centers, dtype=complex).ravel()
    if c.size == 0:
        raise ParameterError("center list must be non-empty")
    if not variance > 0:
        raise ParameterError(f"variance must be > 0, got {variance}")
    scalar = np.isscalar(y1) or np.ndim(y1) == 0
    y = np.atleast_1d(np.asarray(y1, dtype=complex))
    out = np.empty(y.shape[0])
    # Squared distances |y - c|^2 = |y|^2 + |c|^2 - 2 Re(y conj(c)); the
    # cross term is a real (rows, 2) @ (2, K) matmul, which keeps the
    # dominant cost in BLAS and the exp() pass.
    cmat = np.column_stack([c.real, c.imag])
    c2 = c.real * c.real + c.imag * c.imag
    rows = max(1, _CHUNK_ENTRIES // c.size)
    log_norm = np.log(np.pi * variance * c.size)
    for start in range(0, y.shape[0], rows):
        block = y[start:start + rows]
        d = np.column_stack([block.real, block.imag]) @ cmat.T
        d *= -2.0
        d += (block.real * block.real + block.imag * block.imag)[:, None]
        d += c2[None, :]
        dmin = d.min(axis=1)
        np.subtract(dmin[:, None], d, out=d)
        d /= variance
        np.exp(d, out=d)
        out[start:start + rows] = np.log(d.sum(axis=1)) - dmin / variance
    out -= log_norm
    return out[0] if scalar else out
