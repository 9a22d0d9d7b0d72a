"""Command-line interface.

Commands: params, mi, bounds, sweep, envelope, plot. Every file-writing
command drops a JSON manifest next to its output recording the exact
argument vector, seed, and toolkit version, so outputs can be regenerated
bit-for-bit. Exit codes: 0 success, 2 usage/parameter error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys

from . import __version__
from .bounds import (
    QuadratureSettings,
    lower_bound_telatar,
    upper_bound_awgn,
    upper_bound_gaussian_interferers,
)
from .errors import (
    MixtureTooLargeError,
    ParameterError,
    QuadratureError,
    ScenarioError,
)
from .link import (
    REFERENCE_LINK,
    ROUNDED_CHANNEL,
    db_to_linear,
    derive_channel_params,
    load_link_config,
)
from .mi import DEFAULT_MAX_TERMS, MCSettings, mi_discrete, mi_gaussian_primary
from .plotting import per_m_companion_path, plot_curve_csv
from .signals import Shape
from .sweep import (
    AdaptiveDistribution,
    AdaptivePower,
    FixedInterferers,
    PAIRING_TABLE,
    psk_envelope,
    sweep,
    write_curve_csv,
    write_per_m_csv,
)

DEFAULT_SEED = 42

_MODEL_ALIASES = {
    "a": "fixed-interferers",
    "fixed-interferers": "fixed-interferers",
    "b": "adaptive-power",
    "adaptive-power": "adaptive-power",
    "c": "adaptive-distribution",
    "adaptive-distribution": "adaptive-distribution",
}


def _two_sigfig(x: float) -> float:
    if x == 0:
        return 0.0
    exp = math.floor(math.log10(abs(x)))
    scale = 10.0 ** (exp - 1)
    return round(x / scale) * scale


def _resolve_channel(args):
    if getattr(args, "config", None):
        return derive_channel_params(load_link_config(args.config))
    if args.channel == "derived":
        return derive_channel_params(REFERENCE_LINK)
    return ROUNDED_CHANNEL


def _resolve_seed(args) -> int:
    if args.seed is None:
        print(
            f"warning: --seed not given, defaulting to {DEFAULT_SEED}",
            file=sys.stderr,
        )
        return DEFAULT_SEED
    return args.seed


def _snr_to_power(p_ase: float, snr_db: float) -> float:
    return p_ase * db_to_linear(snr_db)


def _grid_db(args):
    start, stop, step = args.grid_start, args.grid_stop, args.grid_step
    if step <= 0 or stop < start:
        raise ParameterError("grid requires step > 0 and stop >= start")
    grid = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-9:
            break
        grid.append(v)
        k += 1
    return grid


def _write_manifest(out_path, command, args):
    manifest = {
        "command": command,
        "argv": list(args._argv),
        "seed": getattr(args, "resolved_seed", None),
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    path = f"{out_path}.manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


def _add_channel_args(p):
    p.add_argument(
        "--channel",
        choices=["rounded", "derived"],
        default="rounded",
        help="built-in channel constants: rounded (610 /W, 0.16 mW) or "
        "derived from the reference link (default: rounded)",
    )
    p.add_argument("--config", help="flat key-value link config file")


def _add_mc_args(p):
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--batch-size", type=int, default=2000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS)


def _add_grid_args(p, stop=30.0):
    p.add_argument("--grid-start", type=float, default=0.0, help="P1/P_ase dB")
    p.add_argument("--grid-stop", type=float, default=stop, help="P1/P_ase dB")
    p.add_argument("--grid-step", type=float, default=1.0, help="dB step")


def cmd_params(args) -> int:
    if args.config:
        link = load_link_config(args.config)
    else:
        link = REFERENCE_LINK
    ch = derive_channel_params(link)
    print(f"epsilon = {ch.epsilon!r} 1/W  (rounded: {_two_sigfig(ch.epsilon):g} 1/W)")
    print(
        f"p_ase   = {ch.p_ase * 1e3!r} mW  "
        f"(rounded: {_two_sigfig(ch.p_ase * 1e3):g} mW)"
    )
    return 0


def cmd_mi(args) -> int:
    params = _resolve_channel(args)
    seed = _resolve_seed(args)
    mc = MCSettings(
        n_samples=args.samples,
        seed=seed,
        n_workers=args.workers,
        batch_size=args.batch_size,
    )
    p1 = _snr_to_power(params.p_ase, args.snr_db)
    p2 = _snr_to_power(params.p_ase, args.p2_db if args.p2_db is not None else args.snr_db)
    p3 = _snr_to_power(params.p_ase, args.p3_db if args.p3_db is not None else args.snr_db)
    primary_shape = Shape.parse(args.primary)
    spec2 = Shape.parse(args.interferer2).with_power(p2)
    spec3 = Shape.parse(args.interferer3).with_power(p3)
    if primary_shape.is_discrete:
        est = mi_discrete(
            primary_shape.with_power(p1), spec2, spec3, params, mc, args.max_terms
        )
    else:
        est = mi_gaussian_primary(p1, spec2, spec3, params, mc, args.max_terms)
    print(f"mi_bits = {est.mean!r}")
    print(f"se_bits = {est.std_error!r}")
    print(f"n_samples = {est.n_samples}")
    return 0


def cmd_bounds(args) -> int:
    params = _resolve_channel(args)
    p1 = _snr_to_power(params.p_ase, args.snr_db)
    p2 = _snr_to_power(params.p_ase, args.p2_db)
    p3 = _snr_to_power(params.p_ase, args.p3_db)
    shape = Shape.parse(args.interferer)
    spec2 = shape.with_power(p2)
    print(f"upper_awgn_bits = {upper_bound_awgn(p1, params)!r}")
    if not shape.is_discrete:
        ub = upper_bound_gaussian_interferers(p1, p2, p3, params)
        print(f"upper_zcg_quadrature_bits = {ub!r}")
    print(f"lower_telatar_bits = {lower_bound_telatar(p1, spec2, p3, params)!r}")
    return 0


def _build_model(args, params):
    name = _MODEL_ALIASES[args.model]
    if name == "fixed-interferers":
        p_int = _snr_to_power(params.p_ase, args.interferer_snr_db)
        s2 = Shape.parse(args.interferer2 or args.interferer)
        s3 = Shape.parse(args.interferer3 or args.interferer)
        return FixedInterferers(spec2=s2.with_power(p_int), spec3=s3.with_power(p_int))
    if name == "adaptive-power":
        s2 = Shape.parse(args.interferer2 or args.interferer)
        s3 = Shape.parse(args.interferer3 or args.interferer)
        return AdaptivePower(shape2=s2, shape3=s3)
    return AdaptiveDistribution()


def cmd_sweep(args) -> int:
    params = _resolve_channel(args)
    seed = _resolve_seed(args)
    args.resolved_seed = seed
    mc = MCSettings(
        n_samples=args.samples,
        seed=seed,
        n_workers=1,
        batch_size=args.batch_size,
    )
    model = _build_model(args, params)
    grid = [_snr_to_power(params.p_ase, db) for db in _grid_db(args)]
    curve = sweep(
        model,
        Shape.parse(args.primary),
        grid,
        params,
        mc,
        max_terms=args.max_terms,
        n_workers=args.workers,
    )
    write_curve_csv(curve, args.output)
    _write_manifest(args.output, "sweep", args)
    print(f"wrote {args.output}")
    return 0


def cmd_envelope(args) -> int:
    params = _resolve_channel(args)
    seed = _resolve_seed(args)
    args.resolved_seed = seed
    mc = MCSettings(
        n_samples=args.samples,
        seed=seed,
        n_workers=1,
        batch_size=args.batch_size,
    )
    if args.m_min < 2 or args.m_max < args.m_min:
        raise ParameterError("need 2 <= m-min <= m-max")
    grid_db = _grid_db(args)
    grid = [_snr_to_power(params.p_ase, db) for db in grid_db]
    curve, per_m = psk_envelope(
        range(args.m_min, args.m_max + 1),
        grid,
        params,
        mc,
        max_terms=args.max_terms,
        n_workers=args.workers,
    )
    write_curve_csv(curve, args.output)
    write_per_m_csv(per_m, [p.snr_db for p in curve.points], per_m_companion_path(args.output))
    _write_manifest(args.output, "envelope", args)
    print(f"wrote {args.output}")
    return 0


def cmd_plot(args) -> int:
    out = args.output or f"{os.path.splitext(args.csv)[0]}.svg"
    plot_curve_csv(args.csv, out)
    _write_manifest(out, "plot", args)
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwmbounds",
        description="Achievable-rate bounds for a three-wavelength "
        "four-wave-mixing WDM channel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="derive (epsilon, p_ase) from a link config")
    p.add_argument("config", nargs="?", help="link config file (default: built-in reference link)")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("mi", help="single-point Monte-Carlo mutual information")
    p.add_argument("--primary", required=True, help="psk{M} or gaussian")
    p.add_argument("--interferer2", required=True, help="psk{M}, gaussian, or file:PATH")
    p.add_argument("--interferer3", required=True)
    p.add_argument("--snr-db", type=float, required=True, help="P1/P_ase in dB")
    p.add_argument("--p2-db", type=float, default=None, help="P2/P_ase in dB (default: snr-db)")
    p.add_argument("--p3-db", type=float, default=None)
    _add_mc_args(p)
    _add_channel_args(p)
    p.set_defaults(func=cmd_mi)

    p = sub.add_parser("bounds", help="closed-form and quadrature bounds at one point")
    p.add_argument("--snr-db", type=float, required=True)
    p.add_argument("--p2-db", type=float, default=5.0)
    p.add_argument("--p3-db", type=float, default=5.0)
    p.add_argument("--interferer", default="gaussian")
    _add_channel_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sweep", help="bound curve over a P1/P_ase grid")
    p.add_argument("--model", required=True, choices=sorted(_MODEL_ALIASES))
    p.add_argument("--primary", default="gaussian")
    p.add_argument("--interferer", default="psk4", help="shape for both interferers")
    p.add_argument("--interferer2", default=None, help="override interferer 2 shape")
    p.add_argument("--interferer3", default=None, help="override interferer 3 shape")
    p.add_argument(
        "--interferer-snr-db",
        type=float,
        default=5.0,
        help="fixed interferer power for model a (dB over P_ase)",
    )
    _add_grid_args(p)
    _add_mc_args(p)
    _add_channel_args(p)
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("envelope", help="PSK-order envelope under the matched model")
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=16)
    _add_grid_args(p)
    _add_mc_args(p)
    _add_channel_args(p)
    p.add_argument("-o", "--output", required=True, help="output CSV path")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("plot", help="render a curve CSV to SVG")
    p.add_argument("csv")
    p.add_argument("-o", "--output", default=None, help="output SVG path")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._argv = list(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(PAIRING_TABLE, file=sys.stderr)
        return 2
    except (ParameterError, MixtureTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def entry():
    sys.exit(main())
