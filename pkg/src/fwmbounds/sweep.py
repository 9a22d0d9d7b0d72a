"""Behavioral interferer models, bound pairing, and power-grid sweeps.

Three interferer behaviors:

  * FixedInterferers: interferer specs are constants, whatever the
    primary does.
  * AdaptivePower: interferer shapes are fixed but their power always
    equals the primary power.
  * AdaptiveDistribution: interferers copy the primary spec exactly.

Each resolved scenario is paired with the bounds that are valid for it
(see _select_methods). Sweeps fan out over a strictly increasing power
grid; every (grid point, constellation) job derives its own seed from
(seed, job index), so output never depends on scheduling or worker count.
"""

from __future__ import annotations

import csv
import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import (
    QuadratureSettings,
    lower_bound_telatar,
    upper_bound_awgn,
    upper_bound_gaussian_interferers,
)
from .errors import ParameterError, ScenarioError
from .link import ChannelParams
from .mi import DEFAULT_MAX_TERMS, MCSettings, MIEstimate, mi_discrete, mi_gaussian_primary
from .signals import InputSpec, Shape, psk_spec

__all__ = [
    "FixedInterferers",
    "AdaptivePower",
    "AdaptiveDistribution",
    "BoundPoint",
    "BoundCurve",
    "resolve",
    "sweep",
    "psk_envelope",
    "model_label",
    "spec_label",
    "write_curve_csv",
    "write_per_m_csv",
    "read_csv_columns",
    "CSV_COLUMNS",
    "PAIRING_TABLE",
]


@dataclass(frozen=True)
class FixedInterferers:
    spec2: InputSpec
    spec3: InputSpec


@dataclass(frozen=True)
class AdaptivePower:
    """Interferer shapes fixed, powers slaved to the primary power."""

    shape2: Shape
    shape3: Shape


@dataclass(frozen=True)
class AdaptiveDistribution:
    """Interferers transmit the primary's distribution, power included."""


_MODEL_LABELS = {
    FixedInterferers: "fixed-interferers",
    AdaptivePower: "adaptive-power",
    AdaptiveDistribution: "adaptive-distribution",
}


def model_label(model) -> str:
    return _MODEL_LABELS[type(model)]


def resolve(model, primary: InputSpec) -> tuple:
    """Interferer specs implied by a behavioral model and a primary spec."""
    if isinstance(model, FixedInterferers):
        return model.spec2, model.spec3
    if isinstance(model, AdaptivePower):
        return model.shape2.with_power(primary.power), model.shape3.with_power(primary.power)
    if isinstance(model, AdaptiveDistribution):
        return primary, primary
    raise ParameterError(f"unknown behavioral model {model!r}")


PAIRING_TABLE = """\
valid scenario pairings (lower bound / upper bound):
  discrete primary + discrete interferers   -> discrete-mc / awgn
  gaussian primary + discrete interferers   -> gaussian-input-mc / awgn
  gaussian primary + gaussian interferers   -> telatar / zcg-quadrature
  gaussian primary + mixed interferers      -> telatar / awgn
  discrete primary + any gaussian interferer-> no valid pairing
"""


def _select_methods(primary: InputSpec, spec2: InputSpec, spec3: InputSpec) -> tuple:
    """Pick (lower_method, upper_method) names valid for the scenario."""
    if spec2.is_discrete and spec3.is_discrete:
        if primary.is_discrete:
            return "discrete-mc", "awgn"
        return "gaussian-input-mc", "awgn"
    if primary.is_discrete:
        raise ScenarioError(
            "no mutual-information estimator exists for a discrete primary with "
            "continuous interferers; use a gaussian primary for this scenario"
        )
    if spec2.is_discrete or spec3.is_discrete:
        # The quadrature upper bound needs both interferers Gaussian.
        return "telatar", "awgn"
    return "telatar", "zcg-quadrature"


def spec_label(spec: InputSpec) -> str:
    if not spec.is_discrete:
        return "gaussian"
    pts = spec.constellation.as_array()
    mags = np.abs(pts)
    if pts.size >= 2 and np.allclose(mags, mags[0], rtol=1e-9, atol=0.0):
        return f"psk{pts.size}"
    return f"discrete{pts.size}"


@dataclass(frozen=True)
class BoundPoint:
    snr_db: float
    p1: float
    lower_bits: float
    lower_se_bits: float
    upper_bits: float
    lower_method: str
    upper_method: str
    argmax_m: int | None = None


@dataclass(frozen=True)
class BoundCurve:
    model: str
    primary: str
    interferer: str
    points: tuple

    def check(self):
        """Raise if the grid is not strictly increasing or a point's lower
        bound exceeds its upper bound by more than 3 standard errors."""
        snrs = [p.snr_db for p in self.points]
        if any(b <= a for a, b in zip(snrs, snrs[1:])):
            raise ParameterError("bound curve grid must be strictly increasing")
        for p in self.points:
            if p.lower_bits > p.upper_bits + 3.0 * p.lower_se_bits:
                raise ParameterError(
                    f"lower bound {p.lower_bits} above upper bound {p.upper_bits} "
                    f"at {p.snr_db} dB"
                )
        return self


def _job_seed(seed: int, job_index: int) -> int:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(job_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def _validate_grid(grid):
    grid = [float(p) for p in grid]
    if not grid:
        raise ParameterError("power grid must be non-empty")
    if any(not (math.isfinite(p) and p > 0) for p in grid):
        raise ParameterError("grid powers must be finite and > 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ParameterError("power grid must be strictly increasing")
    return grid


def _sweep_point(args):
    job_index, p1, model, primary_shape, params, mc, quad, max_terms = args
    primary = primary_shape.with_power(p1)
    spec2, spec3 = resolve(model, primary)
    lower_method, upper_method = _select_methods(primary, spec2, spec3)
    job_mc = dataclasses.replace(mc, seed=_job_seed(mc.seed, job_index), n_workers=1)

    if lower_method == "discrete-mc":
        est = mi_discrete(primary, spec2, spec3, params, job_mc, max_terms)
        lower, lower_se = est.mean, est.std_error
    elif lower_method == "gaussian-input-mc":
        est = mi_gaussian_primary(p1, spec2, spec3, params, job_mc, max_terms)
        lower, lower_se = est.mean, est.std_error
    else:
        lower = lower_bound_telatar(p1, spec2, spec3.power, params)
        lower_se = 0.0

    if upper_method == "awgn":
        upper = upper_bound_awgn(p1, params)
    else:
        upper = upper_bound_gaussian_interferers(p1, spec2.power, spec3.power, params, quad)

    return BoundPoint(
        snr_db=10.0 * math.log10(p1 / params.p_ase),
        p1=p1,
        lower_bits=lower,
        lower_se_bits=lower_se,
        upper_bits=upper,
        lower_method=lower_method,
        upper_method=upper_method,
    )


def _run_jobs(fn, tasks, n_workers):
    if n_workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        return list(pool.map(fn, tasks))


def sweep(
    model,
    primary_shape: Shape,
    grid,
    params: ChannelParams,
    mc: MCSettings,
    quad: QuadratureSettings | None = None,
    max_terms: int = DEFAULT_MAX_TERMS,
    n_workers: int = 1,
) -> BoundCurve:
    """Evaluate the valid bound pair at every power in the grid.

    grid holds primary powers in W, strictly increasing. MC jobs run with
    per-point seeds derived from (mc.seed, grid index); n_workers controls
    wall time only.
    """
    grid = _validate_grid(grid)
    quad = quad or QuadratureSettings()
    # Resolve once at the first grid point to fail fast on bad pairings.
    first_primary = primary_shape.with_power(grid[0])
    s2, s3 = resolve(model, first_primary)
    _select_methods(first_primary, s2, s3)

    tasks = [
        (i, p1, model, primary_shape, params, mc, quad, max_terms)
        for i, p1 in enumerate(grid)
    ]
    points = _run_jobs(_sweep_point, tasks, n_workers)
    return BoundCurve(
        model=model_label(model),
        primary=spec_label(first_primary),
        interferer=spec_label(s2),
        points=tuple(points),
    )


def _envelope_point(args):
    job_index, p1, m, params, mc, max_terms = args
    spec = psk_spec(m, p1)
    job_mc = dataclasses.replace(mc, seed=_job_seed(mc.seed, job_index), n_workers=1)
    return mi_discrete(spec, spec, spec, params, job_mc, max_terms)


def psk_envelope(
    m_values,
    grid,
    params: ChannelParams,
    mc: MCSettings,
    max_terms: int = DEFAULT_MAX_TERMS,
    n_workers: int = 1,
):
    """PSK-order scan under the distribution-matched model.

    Runs the discrete estimator for every (power, M) pair, takes the
    pointwise maximum over M as the envelope lower bound, and records the
    maximizing M (smallest M wins ties). Returns (envelope_curve, per_m)
    with per_m a dict M -> list of MIEstimate along the grid.
    """
    grid = _validate_grid(grid)
    m_values = sorted(set(int(m) for m in m_values))
    if not m_values:
        raise ParameterError("m_values must be non-empty")
    if any(m < 2 for m in m_values):
        raise ParameterError("PSK orders must be >= 2")

    tasks = []
    for gi, p1 in enumerate(grid):
        for mj, m in enumerate(m_values):
            job_index = gi * len(m_values) + mj
            tasks.append((job_index, p1, m, params, mc, max_terms))
    results = _run_jobs(_envelope_point, tasks, n_workers)

    per_m = {m: [] for m in m_values}
    points = []
    for gi, p1 in enumerate(grid):
        row = results[gi * len(m_values):(gi + 1) * len(m_values)]
        for m, est in zip(m_values, row):
            per_m[m].append(est)
        means = [est.mean for est in row]
        best = int(np.argmax(means))  # first index wins ties -> smallest M
        points.append(
            BoundPoint(
                snr_db=10.0 * math.log10(p1 / params.p_ase),
                p1=p1,
                lower_bits=row[best].mean,
                lower_se_bits=row[best].std_error,
                upper_bits=upper_bound_awgn(p1, params),
                lower_method="discrete-mc",
                upper_method="awgn",
                argmax_m=m_values[best],
            )
        )
    label = f"psk-envelope-{m_values[0]}-{m_values[-1]}"
    curve = BoundCurve(
        model="adaptive-distribution",
        primary=label,
        interferer=label,
        points=tuple(points),
    )
    return curve, per_m


CSV_COLUMNS = [
    "snr_db",
    "lower_bits",
    "lower_se_bits",
    "upper_bits",
    "lower_theorem",
    "upper_theorem",
    "model",
    "primary",
    "interferer",
    "argmax_m",
]


def _fmt(x) -> str:
    return repr(float(x))


def write_curve_csv(curve: BoundCurve, path):
    """Write a curve in the toolkit CSV schema (bit-reproducible)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for p in curve.points:
            writer.writerow(
                [
                    _fmt(p.snr_db),
                    _fmt(p.lower_bits),
                    _fmt(p.lower_se_bits),
                    _fmt(p.upper_bits),
                    p.lower_method,
                    p.upper_method,
                    curve.model,
                    curve.primary,
                    curve.interferer,
                    "" if p.argmax_m is None else str(p.argmax_m),
                ]
            )


def write_per_m_csv(per_m, snr_db_grid, path):
    """Companion file for envelope plots: one row per (grid point, M)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["snr_db", "m", "mi_bits", "mi_se_bits"])
        for m in sorted(per_m):
            for snr_db, est in zip(snr_db_grid, per_m[m]):
                writer.writerow([_fmt(snr_db), str(m), _fmt(est.mean), _fmt(est.std_error)])


def read_csv_columns(path, required):
    """Read a CSV into a dict of string-value column lists.

    Raises ParameterError naming every missing column, and on empty files.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParameterError(f"{path}: empty CSV (no header)")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise ParameterError(
                f"{path}: missing required column(s): {', '.join(missing)}"
            )
        rows = list(reader)
    if not rows:
        raise ParameterError(f"{path}: no data rows")
    return {name: [row[name] for row in rows] for name in reader.fieldnames}
