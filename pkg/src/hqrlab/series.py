"""Truncated power series on the unit disk and harmonic maps ``f = h + conj(g)``.

A series stores coefficients ``c_0..c_N`` of ``sum c_n z**n``. Two evaluation
paths are provided:

* :func:`eval_series` -- Horner's rule at arbitrary points inside the disk;
* :func:`eval_on_circle` -- all ``M`` equispaced points of ``|z| = r`` at once
  through one inverse FFT. When ``N + 1 > M`` the damped coefficients are
  folded modulo ``M`` first, which is still exact evaluation of the truncated
  series at the grid points.

Everything here is a pure function of immutable inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import CriticalPointError, DomainError, NotQuasiregularError

#: Relative guard on ``|h'|`` below which the dilatation ``g'/h'`` is refused.
TOL_DIV = 1e-13


def _as_coeffs(values) -> np.ndarray:
    arr = np.array(values, dtype=complex).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class AnalyticSeries:
    """Truncated power series ``sum_{n<=N} c_n z**n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def N(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __call__(self, z):
        return eval_series(self, z)

    def __add__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        return add_series(self, other)

    def __sub__(self, other: "AnalyticSeries") -> "AnalyticSeries":
        return add_series(self, scale_series(other, -1.0))

    def __mul__(self, scalar) -> "AnalyticSeries":
        return scale_series(self, scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AnalyticSeries):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:4])
        more = ", ..." if self.coeffs.size > 4 else ""
        return f"AnalyticSeries(N={self.N}, [{head}{more}])"


def _check_inside(z):
    mod = np.abs(np.asarray(z))
    if np.any(mod >= 1.0) or not np.all(np.isfinite(mod)):
        raise DomainError(f"series evaluation needs |z| < 1, got max |z| = {np.max(mod)!r}")


def eval_series(s: AnalyticSeries, z):
    """Evaluate ``s`` at ``z`` (scalar or array) by Horner's rule.

    Raises :class:`DomainError` when any ``|z| >= 1``.
    """
    _check_inside(z)
    scalar = np.ndim(z) == 0
    if scalar:
        zc = complex(z)
        acc = 0j
        for c in s.coeffs[::-1].tolist():
            acc = acc * zc + c
        return acc
    zc = np.asarray(z, dtype=complex)
    acc = np.zeros_like(zc)
    for c in s.coeffs[::-1]:
        acc = acc * zc + c
    return acc


def circle_points(r: float, M: int) -> np.ndarray:
    """The ``M`` points ``r * exp(2*pi*i*j/M)``."""
    return r * np.exp(2j * np.pi * np.arange(M) / M)


def eval_on_circle(s: AnalyticSeries, r: float, M: int) -> np.ndarray:
    """Values of ``s`` at ``r * exp(2*pi*i*j/M)``, ``j = 0..M-1``."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"circle radius must lie in [0, 1), got {r!r}")
    return _circle_values(s, r, M)


def eval_on_unit_circle(s: AnalyticSeries, M: int) -> np.ndarray:
    """Boundary values of the truncated series, which is a polynomial.

    Only meaningful when the coefficients come from boundary data (for
    example a Schwarz extension); for singular families it evaluates the
    truncation, not the function.
    """
    return _circle_values(s, 1.0, M)


def _circle_values(s: AnalyticSeries, r: float, M: int) -> np.ndarray:
    if M < 1:
        raise DomainError(f"need at least one sample, got M={M}")
    n = np.arange(s.coeffs.size)
    w = s.coeffs * np.power(float(r), n)
    if w.size > M:
        w = np.concatenate([w, np.zeros(-w.size % M, dtype=complex)])
        w = w.reshape(-1, M).sum(axis=0)
    elif w.size < M:
        w = np.concatenate([w, np.zeros(M - w.size, dtype=complex)])
    return np.fft.ifft(w) * M


def derive_series(s: AnalyticSeries) -> AnalyticSeries:
    """Termwise derivative; coefficient ``n`` of the result is ``(n+1) c_{n+1}``."""
    if s.N == 0:
        return AnalyticSeries([0.0])
    return AnalyticSeries(s.coeffs[1:] * np.arange(1, s.coeffs.size))


def integrate_series(s: AnalyticSeries, constant: complex = 0.0) -> AnalyticSeries:
    """Antiderivative with value ``constant`` at the origin (degree grows by one)."""
    out = np.empty(s.coeffs.size + 1, dtype=complex)
    out[0] = constant
    out[1:] = s.coeffs / np.arange(1, s.coeffs.size + 1)
    return AnalyticSeries(out)


def _padded(a: np.ndarray, size: int) -> np.ndarray:
    if a.size == size:
        return a
    return np.concatenate([a, np.zeros(size - a.size, dtype=complex)])


def add_series(a: AnalyticSeries, b: AnalyticSeries) -> AnalyticSeries:
    size = max(a.coeffs.size, b.coeffs.size)
    return AnalyticSeries(_padded(a.coeffs, size) + _padded(b.coeffs, size))


def scale_series(s: AnalyticSeries, scalar) -> AnalyticSeries:
    return AnalyticSeries(s.coeffs * scalar)


def multiply_series(a: AnalyticSeries, b: AnalyticSeries, N: int | None = None) -> AnalyticSeries:
    """Cauchy product truncated to degree ``N`` (default ``max(a.N, b.N)``)."""
    from scipy.signal import fftconvolve

    if N is None:
        N = max(a.N, b.N)
    if min(a.coeffs.size, b.coeffs.size) <= 64:
        prod = np.convolve(a.coeffs, b.coeffs)
    else:
        prod = fftconvolve(a.coeffs, b.coeffs)
    return AnalyticSeries(_padded(prod[: N + 1], N + 1))


@dataclass(frozen=True)
class HarmonicMap:
    """``f = h + conj(g)`` with ``g(0) = 0``; ``u = Re f`` and ``v = Im f``."""

    h: AnalyticSeries
    g: AnalyticSeries = field(default_factory=lambda: AnalyticSeries([0.0]))

    def __post_init__(self):
        if not isinstance(self.h, AnalyticSeries):
            object.__setattr__(self, "h", AnalyticSeries(self.h))
        if not isinstance(self.g, AnalyticSeries):
            object.__setattr__(self, "g", AnalyticSeries(self.g))
        if self.g.coeffs[0] != 0:
            raise DomainError(f"g(0) must vanish, got {self.g.coeffs[0]!r}")

    def __call__(self, z):
        return eval_harmonic(self, z)

    def on_circle(self, r: float, M: int) -> np.ndarray:
        return eval_on_circle(self.h, r, M) + np.conj(eval_on_circle(self.g, r, M))


def eval_harmonic(f: HarmonicMap, z):
    """``h(z) + conj(g(z))``."""
    return eval_series(f.h, z) + np.conj(eval_series(f.g, z))


def _guard(hp, gp, z):
    bad = np.abs(hp) <= TOL_DIV * (1.0 + np.abs(gp))
    if np.any(bad):
        where = np.asarray(z)[bad].ravel()[0] if np.ndim(z) else z
        raise CriticalPointError(complex(where))


def dilatation(f: HarmonicMap, z):
    """Complex dilatation ``g'(z)/h'(z)``.

    Raises :class:`CriticalPointError` where ``|h'| <= 1e-13 (1 + |g'|)``.
    """
    hp = eval_series(derive_series(f.h), z)
    gp = eval_series(derive_series(f.g), z)
    _guard(hp, gp, z)
    return gp / hp


def dilatation_on_circle(f: HarmonicMap, r: float, M: int) -> np.ndarray:
    hp = eval_on_circle(derive_series(f.h), r, M)
    gp = eval_on_circle(derive_series(f.g), r, M)
    _guard(hp, gp, circle_points(r, M))
    return gp / hp


def check_sense_preserving(f: HarmonicMap, r: float, M: int = 256) -> float:
    """Return ``min_theta (|h'| - |g'|)`` on ``|z| = r``; raise if it is not positive."""
    hp = np.abs(eval_on_circle(derive_series(f.h), r, M))
    gp = np.abs(eval_on_circle(derive_series(f.g), r, M))
    margin = float(np.min(hp - gp))
    if margin <= 0:
        raise NotQuasiregularError(f"map is not sense-preserving on |z|={r}: min(|h'|-|g'|)={margin:.3e}")
    return margin


@dataclass(frozen=True)
class QrReport:
    k_hat: float
    K_hat: float
    r_checked: float
    argmax_location: tuple[float, float]

    def to_record(self) -> dict:
        return {
            "k_hat": self.k_hat,
            "K_hat": self.K_hat,
            "r_checked": self.r_checked,
            "argmax_r": self.argmax_location[0],
            "argmax_theta": self.argmax_location[1],
        }


def distortion_from_k(k: float) -> float:
    """``K = (1 + k)/(1 - k)``, the inverse of ``k = (K - 1)/(K + 1)``."""
    return (1.0 + k) / (1.0 - k)


def k_from_distortion(K: float) -> float:
    return (K - 1.0) / (K + 1.0)


def qr_constants(f: HarmonicMap, r_grid: Sequence[float], n_theta: int = 256) -> QrReport:
    """Measure ``k_hat = max |g'/h'|`` over the sampled circles and the matching ``K_hat``."""
    if n_theta < 64:
        raise DomainError(f"n_theta must be at least 64, got {n_theta}")
    radii = [float(r) for r in r_grid]
    if not radii:
        raise DomainError("r_grid is empty")
    k_hat, where = -1.0, (radii[0], 0.0)
    for r in radii:
        mod = np.abs(dilatation_on_circle(f, r, n_theta))
        j = int(np.argmax(mod))
        if mod[j] > k_hat:
            k_hat, where = float(mod[j]), (r, 2 * np.pi * j / n_theta)
    if k_hat >= 1.0:
        raise NotQuasiregularError(f"max |omega| = {k_hat:.6g} >= 1 at (r, theta) = {where}")
    return QrReport(k_hat, distortion_from_k(k_hat), max(radii), where)


def analytic_completion(f: HarmonicMap) -> AnalyticSeries:
    """``F = h + g``; analytic with ``Re F = Re f``."""
    return add_series(f.h, f.g)
