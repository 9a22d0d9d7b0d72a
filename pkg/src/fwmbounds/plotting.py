"""Static SVG rendering of bound-curve CSVs.

Rendering never recomputes anything: the CSV is the single source of the
plotted numbers. Lower bounds are solid, upper bounds dashed, and the
region between them is shaded to show the remaining uncertainty about
the true rate. Envelope CSVs additionally draw the per-M curves in gray when the
companion *_per_m.csv file sits next to the input.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import read_csv_columns

__all__ = ["plot_curve_csv", "per_m_companion_path"]

_REQUIRED = ["snr_db", "lower_bits", "lower_se_bits", "upper_bits", "model",
             "primary", "interferer", "argmax_m"]


def per_m_companion_path(csv_path) -> str:
    root, ext = os.path.splitext(str(csv_path))
    return f"{root}_per_m{ext or '.csv'}"


def plot_curve_csv(csv_path, out_path) -> str:
    """Render a sweep or envelope CSV to an SVG file; returns out_path."""
    cols = read_csv_columns(csv_path, _REQUIRED)
    snr = [float(v) for v in cols["snr_db"]]
    lower = [float(v) for v in cols["lower_bits"]]
    upper = [float(v) for v in cols["upper_bits"]]
    is_envelope = any(v.strip() for v in cols["argmax_m"])

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.fill_between(snr, lower, upper, color="0.85", zorder=0)

    if is_envelope:
        companion = per_m_companion_path(csv_path)
        if os.path.exists(companion):
            per_m = read_csv_columns(companion, ["snr_db", "m", "mi_bits"])
            orders = sorted(set(int(m) for m in per_m["m"]))
            for m in orders:
                xs = [float(s) for s, mm in zip(per_m["snr_db"], per_m["m"]) if int(mm) == m]
                ys = [float(v) for v, mm in zip(per_m["mi_bits"], per_m["m"]) if int(mm) == m]
                ax.plot(xs, ys, color="0.6", lw=0.8, zorder=1)
        ax.plot(snr, lower, "k-", lw=1.8, zorder=2, label="lower bound (envelope)")
    else:
        ax.plot(snr, lower, "-", color="C0", lw=1.8, zorder=2, label="lower bound")
    ax.plot(snr, upper, "--", color="C3", lw=1.8, zorder=2, label="upper bound")

    ax.set_xlabel(r"$P_1/P_\mathrm{ase}$ [dB]")
    ax.set_ylabel("rate [bit/symbol]")
    ax.set_title(
        f"{cols['model'][0]} | primary: {cols['primary'][0]} | "
        f"interferers: {cols['interferer'][0]}",
        fontsize=10,
    )
    ax.legend(loc="upper left", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    return str(out_path)
