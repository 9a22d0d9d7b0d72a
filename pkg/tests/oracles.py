"""Independent numerical oracles used by the test suite.

Everything here is deliberately written against the mathematical
definitions with stock quadrature, touching none of the package's
log-density machinery, so agreement with the Monte-Carlo estimators is a
real cross-check and not a tautology.
"""

import numpy as np


def awgn_psk_mi_bits(m, snr, n_nodes=96):
    """AWGN mutual information of uniform M-PSK at E|X|^2 / E|N|^2 = snr.

    2-D Gauss-Hermite quadrature over the complex noise. With noise power
    normalized to 1 the per-dimension variance is 1/2, so E[g(N)] =
    (1/pi) sum_kl w_k w_l g(t_k + j t_l).
    """
    nodes, weights = np.polynomial.hermite.hermgauss(n_nodes)
    noise = (nodes[:, None] + 1j * nodes[None, :]).ravel()
    w2 = (weights[:, None] * weights[None, :]).ravel()
    pts = np.sqrt(snr) * np.exp(2j * np.pi * np.arange(m) / m)

    total = 0.0
    for i in range(m):
        # log2 sum_j exp(|n|^2 - |x_i - x_j + n|^2), averaged over noise
        diff = pts[i] - pts  # (m,)
        expo = np.abs(noise[:, None]) ** 2 - np.abs(diff[None, :] + noise[:, None]) ** 2
        emax = expo.max(axis=1)
        inner = emax + np.log(np.exp(expo - emax[:, None]).sum(axis=1))
        total += float(w2 @ inner) / np.pi
    return np.log2(m) - total / (m * np.log(2.0))


def awgn_binary_real_mi_bits(snr, n_grid=20001, half_width=12.0):
    """Capacity of +/-a in real unit-variance noise at a^2 = snr.

    Independent check of the Gauss-Hermite path: brute-force trapezoid
    integration of I = 1 - E[log2(1 + exp(-2 a (a + n)))].
    """
    a = np.sqrt(snr)
    n = np.linspace(-half_width, half_width, n_grid)
    pdf = np.exp(-n * n / 2.0) / np.sqrt(2.0 * np.pi)
    arg = -2.0 * a * (a + n)
    # log1p(exp(arg)) evaluated stably on both sides
    val = np.where(arg > 0, arg + np.log1p(np.exp(-np.abs(arg))), np.log1p(np.exp(np.minimum(arg, 0))))
    return 1.0 - float(np.trapezoid(pdf * val, n)) / np.log(2.0)


def exponential_average_mc(fn, mean, n_samples, seed):
    """Plain Monte-Carlo E[fn(U)] for U ~ Exp(mean); returns (mean, se)."""
    rng = np.random.default_rng(seed)
    u = rng.exponential(mean, int(n_samples))
    vals = fn(u)
    return float(np.mean(vals)), float(np.std(vals, ddof=1) / np.sqrt(len(vals)))


def complex_gaussian_density_integral(log_density, mean, variance, half_width_sigmas=8.0, n_grid=601):
    """Integrate exp(log_density(y)) over a grid around `mean` (Simpson).

    Covers half_width_sigmas per-dimension standard deviations, enough for
    1e-6 absolute accuracy on a unit-mass Gaussian.
    """
    from scipy.integrate import simpson

    sigma = np.sqrt(variance / 2.0)
    ax = np.linspace(-half_width_sigmas * sigma, half_width_sigmas * sigma, n_grid)
    re = mean.real + ax
    im = mean.imag + ax
    grid = re[:, None] + 1j * im[None, :]
    dens = np.exp(log_density(grid.ravel())).reshape(grid.shape)
    return float(simpson(simpson(dens, x=im, axis=1), x=re))
