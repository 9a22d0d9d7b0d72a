"""Monte-Carlo mutual-information estimators for wavelength 1.

Two estimators, both averaging log2 f(y1|x1) - log2 f(y1) over sampled
channel uses:

  * mi_discrete: all three inputs uniform over finite constellations.
    f(y1|x1) is an equal-weight Gaussian mixture over the |X2|*|X3|
    interference values, f(y1) additionally mixes over |X1|.
  * mi_gaussian_primary: Gaussian wavelength-1 input, discrete
    interferers. The output mixture has variance p1 + p_ase and centers
    at the interference values alone.

Reproducibility contract: work is split into fixed-size batches; batch b
draws from a generator seeded by SeedSequence(seed, spawn_key=(b,)).
Partial sums are combined in batch order, so (seed, n_samples,
batch_size) determine the estimate bit-for-bit regardless of n_workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import log_mixture_density
from .errors import MixtureTooLargeError, ParameterError
from .link import ChannelParams
from .signals import InputSpec, sample_zcg

__all__ = ["MCSettings", "MIEstimate", "mi_discrete", "mi_gaussian_primary",
           "DEFAULT_MAX_TERMS"]

_LN2 = math.log(2.0)

# Largest allowed constellation-size product (|X1||X2||X3|, or |X2||X3|
# for the Gaussian-input estimator): 16 * 16 * 16.
DEFAULT_MAX_TERMS = 4096


@dataclass(frozen=True)
class MCSettings:
    """Sample budget, seeding, and batching for the estimators."""

    n_samples: int = 100_000
    seed: int = 42
    n_workers: int = 1
    batch_size: int = 2000

    def __post_init__(self):
        if self.n_samples < 1000:
            raise ParameterError(f"n_samples must be >= 1000, got {self.n_samples}")
        if self.batch_size < 1:
            raise ParameterError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.n_workers < 1:
            raise ParameterError(f"n_workers must be >= 1, got {self.n_workers}")


@dataclass(frozen=True)
class MIEstimate:
    """Sample-mean MI in bits/symbol with its standard error."""

    mean: float
    std_error: float
    n_samples: int

    def __post_init__(self):
        if self.std_error < 0:
            raise ParameterError("std_error must be >= 0")
        if self.mean < -5.0 * self.std_error:
            raise ParameterError(
                f"MI estimate {self.mean} is more than 5 standard errors below zero"
            )


def _batch_rng(seed, batch_index):
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(batch_index,))
    )


def _batch_sizes(n_samples, batch_size):
    sizes = [batch_size] * (n_samples // batch_size)
    if n_samples % batch_size:
        sizes.append(n_samples % batch_size)
    return sizes


def _discrete_batch(args):
    seed, b, n, pts1, fwm23, centers123, pase = args
    rng = _batch_rng(seed, b)
    i1 = rng.integers(0, len(pts1), n)
    i23 = rng.integers(0, len(fwm23), n)
    noise = sample_zcg(rng, pase, n)
    x1 = pts1[i1]
    y1 = x1 + fwm23[i23] + noise
    num = log_mixture_density(y1 - x1, fwm23, pase)
    den = log_mixture_density(y1, centers123, pase)
    r = num - den
    return float(np.sum(r)), float(np.sum(r * r))


def _gaussian_batch(args):
    seed, b, n, p1, fwm23, pase = args
    rng = _batch_rng(seed, b)
    x1 = sample_zcg(rng, p1, n)
    i23 = rng.integers(0, len(fwm23), n)
    noise = sample_zcg(rng, pase, n)
    y1 = x1 + fwm23[i23] + noise
    num = log_mixture_density(y1 - x1, fwm23, pase)
    den = log_mixture_density(y1, fwm23, p1 + pase)
    r = num - den
    return float(np.sum(r)), float(np.sum(r * r))


def _run(worker, static_args, mc: MCSettings) -> MIEstimate:
    tasks = [
        (mc.seed, b, n, *static_args)
        for b, n in enumerate(_batch_sizes(mc.n_samples, mc.batch_size))
    ]
    if mc.n_workers == 1:
        results = [worker(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=mc.n_workers) as pool:
            results = list(pool.map(worker, tasks))
    # results is in batch order; np.sum is pairwise, so the accumulation
    # is identical for every worker count.
    sums = np.array([r[0] for r in results])
    sqsums = np.array([r[1] for r in results])
    n = mc.n_samples
    total = float(np.sum(sums))
    total_sq = float(np.sum(sqsums))
    mean_nats = total / n
    var_nats = max((total_sq - total * total / n) / (n - 1), 0.0) if n > 1 else 0.0
    se_nats = math.sqrt(var_nats / n)
    return MIEstimate(mean=mean_nats / _LN2, std_error=se_nats / _LN2, n_samples=n)


def _fwm_products(spec2: InputSpec, spec3: InputSpec, epsilon: float) -> np.ndarray:
    pts2 = spec2.constellation.as_array()
    pts3 = spec3.constellation.as_array()
    return (epsilon * (pts2 * pts2)[:, None] * np.conj(pts3)[None, :]).ravel()


def _require_discrete(name, spec):
    if not spec.is_discrete:
        raise ParameterError(f"{name} must be a discrete input spec")


def mi_discrete(
    spec1: InputSpec,
    spec2: InputSpec,
    spec3: InputSpec,
    params: ChannelParams,
    mc: MCSettings,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> MIEstimate:
    """Estimate I(X1;Y1) with all three inputs discrete and uniform.

    Samples the full joint (x1, x2, x3, n1), forms y1, and averages the
    log density ratio through the stable log-mixture path. The
    |X1|*|X2|*|X3| mixture product must not exceed max_terms.
    """
    for name, spec in (("spec1", spec1), ("spec2", spec2), ("spec3", spec3)):
        _require_discrete(name, spec)
    k1 = spec1.constellation.size
    k23 = spec2.constellation.size * spec3.constellation.size
    if k1 * k23 > max_terms:
        raise MixtureTooLargeError(
            f"constellation product {k1 * k23} exceeds cap {max_terms}"
        )
    pts1 = spec1.constellation.as_array()
    fwm23 = _fwm_products(spec2, spec3, params.epsilon)
    centers123 = (pts1[:, None] + fwm23[None, :]).ravel()
    return _run(_discrete_batch, (pts1, fwm23, centers123, params.p_ase), mc)


def mi_gaussian_primary(
    p1: float,
    spec2: InputSpec,
    spec3: InputSpec,
    params: ChannelParams,
    mc: MCSettings,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> MIEstimate:
    """Estimate I(X1;Y1) for a Gaussian wavelength-1 input of power p1.

    Interferers must be discrete; the |X2|*|X3| product is capped at
    max_terms.
    """
    if p1 < 0 or not math.isfinite(p1):
        raise ParameterError(f"p1 must be finite and >= 0, got {p1}")
    _require_discrete("spec2", spec2)
    _require_discrete("spec3", spec3)
    k23 = spec2.constellation.size * spec3.constellation.size
    if k23 > max_terms:
        raise MixtureTooLargeError(
            f"constellation product {k23} exceeds cap {max_terms}"
        )
    fwm23 = _fwm_products(spec2, spec3, params.epsilon)
    return _run(_gaussian_batch, (p1, fwm23, params.p_ase), mc)
