"""Input distributions: uniform complex constellations and circular Gaussians.

Amplitudes are in sqrt(W), so mean |x|^2 is a power in W. Discrete specs
are always stored normalized to their declared power; Gaussian specs are
zero-mean circularly symmetric with per-dimension variance power/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "Constellation",
    "InputSpec",
    "Shape",
    "make_psk",
    "fourth_moment",
    "sample",
    "sample_zcg",
    "load_constellation_points",
    "psk_spec",
    "gaussian_spec",
]

_REL_TOL = 1e-12


@dataclass(frozen=True)
class Constellation:
    """A finite set of equiprobable complex points."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 1:
            raise ParameterError("constellation needs at least one point")
        pts = tuple(complex(p) for p in self.points)
        if not all(math.isfinite(p.real) and math.isfinite(p.imag) for p in pts):
            raise ParameterError("constellation points must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def power(self) -> float:
        """Mean |x|^2 over the points."""
        return sum(abs(p) ** 2 for p in self.points) / len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)

    def scaled_to(self, power: float) -> "Constellation":
        """Return a copy normalized to the given mean power."""
        if power < 0 or not math.isfinite(power):
            raise ParameterError(f"power must be finite and >= 0, got {power}")
        if power == 0.0:
            return Constellation(tuple(0j for _ in self.points))
        cur = self.power
        if cur == 0.0:
            raise ParameterError("cannot scale an all-zero constellation to nonzero power")
        s = math.sqrt(power / cur)
        return Constellation(tuple(p * s for p in self.points))

    def rotated(self, phase: float) -> "Constellation":
        rot = cmath.exp(1j * phase)
        return Constellation(tuple(p * rot for p in self.points))


def make_psk(m: int, power: float) -> Constellation:
    """M-PSK: m points sqrt(power) * exp(2j*pi*k/m), k = 0..m-1.

    Phase convention: the first point sits on the positive real axis. The
    channel statistics are rotation invariant, so this only fixes goldens.
    """
    if int(m) != m or m < 2:
        raise ParameterError(f"PSK order must be an integer >= 2, got {m}")
    if power < 0 or not math.isfinite(power):
        raise ParameterError(f"power must be finite and >= 0, got {power}")
    r = math.sqrt(power)
    return Constellation(tuple(r * cmath.exp(2j * math.pi * k / m) for k in range(int(m))))


@dataclass(frozen=True)
class InputSpec:
    """A per-wavelength input distribution with declared power.

    constellation is None for the zero-mean circularly symmetric Gaussian;
    otherwise the uniform distribution over the stored points, which must
    already carry the declared power.
    """

    power: float
    constellation: Constellation | None = None

    def __post_init__(self):
        if not (math.isfinite(self.power) and self.power >= 0.0):
            raise ParameterError(f"power must be finite and >= 0, got {self.power}")
        if self.constellation is not None:
            cp = self.constellation.power
            if abs(cp - self.power) > _REL_TOL * max(self.power, cp, 1e-300):
                raise ParameterError(
                    f"constellation power {cp} does not match declared power {self.power}"
                )

    @property
    def is_discrete(self) -> bool:
        return self.constellation is not None

    @property
    def kind(self) -> str:
        return "discrete" if self.is_discrete else "gaussian"

    def with_power(self, power: float) -> "InputSpec":
        """Same shape, rescaled to a new power."""
        if self.constellation is None:
            return InputSpec(power=power)
        return InputSpec(power=power, constellation=self.constellation.scaled_to(power))


def psk_spec(m: int, power: float) -> InputSpec:
    return InputSpec(power=power, constellation=make_psk(m, power))


def gaussian_spec(power: float) -> InputSpec:
    return InputSpec(power=power)


def fourth_moment(spec: InputSpec) -> float:
    """E[|X|^4] in W^2: mean |x|^4 for discrete specs, 2*power^2 for Gaussian."""
    if spec.constellation is None:
        return 2.0 * spec.power**2
    pts = spec.constellation.points
    return sum(abs(p) ** 4 for p in pts) / len(pts)


def sample_zcg(rng: np.random.Generator, power: float, size=None):
    """Zero-mean circularly symmetric complex Gaussian, E|X|^2 = power.

    Real and imaginary parts are independent N(0, power/2), drawn as one
    standard-normal block of shape (size, 2) so the stream layout is fixed.
    """
    n = 1 if size is None else int(size)
    z = rng.standard_normal((n, 2))
    out = (z[:, 0] + 1j * z[:, 1]) * math.sqrt(power / 2.0)
    return out[0] if size is None else out


def sample(spec: InputSpec, rng: np.random.Generator, size=None):
    """Draw from an input spec; deterministic given (spec, rng state)."""
    if spec.constellation is None:
        return sample_zcg(rng, spec.power, size)
    pts = spec.constellation.as_array()
    idx = rng.integers(0, len(pts), size=1 if size is None else int(size))
    out = pts[idx]
    return out[0] if size is None else out


def load_constellation_points(path) -> list:
    """Read one `re,im` pair per line; `#` comments and blank lines skipped."""
    points = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) != 2:
                raise ParameterError(
                    f"{path}: line {lineno}: expected 're,im', got {raw.strip()!r}"
                )
            try:
                points.append(complex(float(parts[0]), float(parts[1])))
            except ValueError:
                raise ParameterError(
                    f"{path}: line {lineno}: could not parse {raw.strip()!r}"
                ) from None
    if not points:
        raise ParameterError(f"{path}: no constellation points found")
    return points


@dataclass(frozen=True)
class Shape:
    """A distribution shape with the power left open.

    Behavioral models that rescale interferers to the primary power carry
    shapes, not specs; with_power() attaches a power and yields an
    InputSpec. unit_points is None for the Gaussian shape, otherwise a
    power-1 template constellation.
    """

    label: str
    unit_points: tuple | None

    @classmethod
    def gaussian(cls) -> "Shape":
        return cls(label="gaussian", unit_points=None)

    @classmethod
    def psk(cls, m: int) -> "Shape":
        return cls(label=f"psk{int(m)}", unit_points=make_psk(m, 1.0).points)

    @classmethod
    def from_points(cls, points, label: str) -> "Shape":
        unit = Constellation(tuple(points)).scaled_to(1.0)
        return cls(label=label, unit_points=unit.points)

    @classmethod
    def parse(cls, token: str) -> "Shape":
        """Parse a CLI token: psk{M} | gaussian | file:PATH."""
        tok = token.strip().lower()
        if tok == "gaussian":
            return cls.gaussian()
        if tok.startswith("psk"):
            try:
                m = int(tok[3:])
            except ValueError:
                raise ParameterError(f"bad PSK order in {token!r}") from None
            return cls.psk(m)
        if token.strip().startswith("file:"):
            path = token.strip()[5:]
            return cls.from_points(load_constellation_points(path), label=token.strip())
        raise ParameterError(
            f"unknown input shape {token!r} (expected psk{{M}}, gaussian, or file:PATH)"
        )

    @property
    def is_discrete(self) -> bool:
        return self.unit_points is not None

    def with_power(self, power: float) -> InputSpec:
        if self.unit_points is None:
            return InputSpec(power=power)
        c = Constellation(self.unit_points).scaled_to(power)
        return InputSpec(power=power, constellation=c)
