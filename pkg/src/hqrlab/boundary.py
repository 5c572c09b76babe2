"""Functions on the unit circle sampled at ``theta_j = 2*pi*j/M``.

Conjugation is done with the Fourier multiplier ``-i sgn(n)``, which is exact
on trigonometric polynomials and needs no principal-value quadrature. The
Nyquist coefficient ``n = M/2`` has no conjugate and is dropped.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .errors import DomainError
from .series import AnalyticSeries, derive_series, eval_on_circle


def _is_power_of_two(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class BoundarySignal:
    """Samples ``values[j] = phi(exp(i theta_j))`` on a uniform grid of ``M`` points."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values)
        arr = arr.astype(complex if np.iscomplexobj(arr) else float)
        if arr.ndim != 1:
            raise DomainError("boundary samples must be one-dimensional")
        if arr.size < 8 or not _is_power_of_two(arr.size):
            raise DomainError(f"sample count must be a power of two >= 8, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def thetas(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values) or not np.any(self.values.imag)

    @classmethod
    def from_function(cls, func, M: int) -> "BoundarySignal":
        return cls(func(2 * np.pi * np.arange(M) / M))


@dataclass(frozen=True)
class FourierCoeffs:
    """Coefficients ``c[n]`` for ``n = -M/2+1 .. M/2`` stored in that order."""

    c: np.ndarray
    M: int

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.M // 2 + 1, self.M // 2 + 1)

    def __getitem__(self, n: int) -> complex:
        if not -self.M // 2 < n <= self.M // 2:
            raise IndexError(n)
        return self.c[n + self.M // 2 - 1]

    def fft_order(self) -> np.ndarray:
        """Coefficients in numpy FFT layout (index ``n mod M``)."""
        return np.roll(self.c, -(self.M // 2 - 1))


def fourier_analyze(s: BoundarySignal) -> FourierCoeffs:
    """``c_n = (1/M) sum_j phi_j exp(-i n theta_j)``."""
    raw = np.fft.fft(s.values) / s.M
    return FourierCoeffs(np.roll(raw, s.M // 2 - 1), s.M)


def fourier_synthesize(coeffs: FourierCoeffs) -> BoundarySignal:
    """Inverse of :func:`fourier_analyze`."""
    return BoundarySignal(np.fft.ifft(coeffs.fft_order()) * coeffs.M)


def _require_real(u: BoundarySignal) -> np.ndarray:
    if not u.is_real:
        raise DomainError("expected real-valued boundary data")
    return u.values.real


def schwarz_extension(u: BoundarySignal) -> AnalyticSeries:
    """Analytic ``F`` with ``Re F`` the Poisson extension of ``u`` and ``Im F(0) = 0``.

    ``F_0 = c_0`` and ``F_n = 2 c_n`` for ``1 <= n < M/2``.
    """
    vals = _require_real(u)
    c = np.fft.fft(vals) / u.M
    out = np.empty(u.M // 2, dtype=complex)
    out[0] = c[0].real
    out[1:] = 2 * c[1 : u.M // 2]
    return AnalyticSeries(out)


def conjugate_signal(u: BoundarySignal) -> BoundarySignal:
    """Boundary values of the harmonic conjugate ``v`` with ``v(0) = 0``."""
    vals = _require_real(u)
    M = u.M
    mult = -1j * np.sign(np.fft.fftfreq(M, 1.0 / M))
    mult[M // 2] = 0.0
    v = np.fft.ifft(np.fft.fft(vals) * mult)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.max(np.abs(v.imag)) > 1e-12 * scale:
        raise DomainError("conjugation produced a non-real signal")
    return BoundarySignal(v.real)


def _gap(delta: float, M: int) -> int:
    if delta < 2 * np.pi / M * (1 - 1e-12):
        raise DomainError(f"gap {delta!r} is below the grid resolution 2*pi/M = {2 * np.pi / M!r}")
    return min(int(round(delta * M / (2 * np.pi))), M // 2)


def modulus_of_continuity(s: BoundarySignal, deltas: Iterable[float]) -> list[tuple[float, float]]:
    """``omega(delta) = max |phi_i - phi_j|`` over sample pairs at arc distance ``<= delta``.

    Distances wrap around the circle. Real signals use sliding max/min filters;
    complex ones fall back to comparing shifted copies.
    """
    deltas = [float(d) for d in deltas]
    gaps = [_gap(d, s.M) for d in deltas]
    vals = s.values
    out = []
    if s.is_real:
        x = vals.real
        for d, g in zip(deltas, gaps):
            size = g + 1
            ext = np.concatenate([x, x[:g]])
            hi = maximum_filter1d(ext, size, origin=-(size // 2))[: s.M]
            lo = minimum_filter1d(ext, size, origin=-(size // 2))[: s.M]
            out.append((d, float(np.max(hi - lo))))
        return out
    best, done = 0.0, 0
    order = np.argsort(gaps, kind="stable")
    result = [0.0] * len(deltas)
    for i in order:
        for g in range(done + 1, gaps[i] + 1):
            best = max(best, float(np.max(np.abs(np.roll(vals, -g) - vals))))
        done = max(done, gaps[i])
        result[i] = best
    return list(zip(deltas, result))


def poisson_denominator(r, t):
    """``1 - 2 r cos t + r**2 = |exp(it) - r|**2``."""
    return 1.0 - 2.0 * r * np.cos(t) + r * r


def schwarz_derivative_bound(
    u: BoundarySignal,
    r: float,
    n_theta: int | None = None,
    chunk: int = 256,
) -> float:
    """Trapezoidal value of ``(1/pi) int |u(theta+t) - u(theta)| / (1 - 2r cos t + r^2) dt``,
    maximised over ``theta``.

    ``n_theta`` evaluates only every ``M // n_theta``-th grid angle (always
    including ``theta = 0``); ``None`` uses all ``M``. Cost is ``O(n_theta * M)``.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r!r}")
    vals = _require_real(u)
    M = u.M
    weights = (2 * np.pi / M) / np.pi / poisson_denominator(r, u.thetas)
    stride = 1 if n_theta is None else max(1, M // int(n_theta))
    rows = np.arange(0, M, stride)
    shifts = np.arange(M)
    best = 0.0
    for start in range(0, rows.size, chunk):
        idx = rows[start : start + chunk]
        diffs = np.abs(vals[(idx[:, None] + shifts[None, :]) % M] - vals[idx, None])
        best = max(best, float(np.max(diffs @ weights)))
    return best


def schwarz_derivative_max(u: BoundarySignal, r: float, M: int | None = None) -> float:
    """``max_theta |F'(r e^{i theta})|`` for ``F = schwarz_extension(u)``."""
    dF = derive_series(schwarz_extension(u))
    M = M or max(4096, 4 * (dF.N + 1))
    return float(np.max(np.abs(eval_on_circle(dF, r, M))))


def format_signal_csv(s: BoundarySignal, precision: int = 17) -> str:
    """``theta,value`` rows; complex values are written as Python complex literals."""
    lines = ["theta,value"]
    fmt = f"{{:.{precision}g}}"
    for t, v in zip(s.thetas, s.values):
        lines.append(f"{fmt.format(t)},{fmt.format(v.real if s.is_real else v)}")
    return "\n".join(lines) + "\n"


def write_signal_csv(s: BoundarySignal, path, precision: int = 17) -> None:
    Path(path).write_text(format_signal_csv(s, precision))


def read_signal_csv(path) -> BoundarySignal:
    """Read a ``theta,value`` CSV; rows must sit on the uniform grid in order."""
    thetas, values = [], []
    with open(Path(path), newline="") as fh:
        for row in csv.DictReader(line for line in fh if not line.startswith("#")):
            thetas.append(float(row["theta"]))
            values.append(complex(row["value"].replace(" ", "")))
    vals = np.array(values)
    if not np.any(vals.imag):
        vals = vals.real
    s = BoundarySignal(vals)
    if not np.allclose(np.asarray(thetas), s.thetas, atol=1e-9):
        raise DomainError(f"{path}: theta column is not the uniform grid 2*pi*j/M")
    return s
