"""Exponent fits and the checks built on them.

All regressions are ordinary least squares. ``stderr`` is the usual
homoscedastic standard error of the slope. An O(.) statement is judged at desk
scale by a slope over a window of radii ``1 - 2**-j`` plus agreement between
the two half-windows (see :func:`half_window_fits`).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .boundary import BoundarySignal, schwarz_extension
from .errors import DomainError, FitError, PairingError
from .means import RadialProfile, geometric_grid, radial_profile, series_subject
from .series import derive_series

#: Default fit window: ``j >= 3`` on the ``1 - 2**-j`` grid, nothing dropped at the top.
DEFAULT_WINDOW = (1.0 - 2.0**-3, 1.0)
MIN_POINTS = 4
MODELS = ("power_growth", "log_power", "holder", "holder_log")


@dataclass(frozen=True)
class FitReport:
    model: str
    exponent_hat: float
    intercept_hat: float
    stderr: float
    window: tuple[float, float]
    residual_max: float
    n_points: int = 0
    flags: tuple[str, ...] = field(default=())

    def to_record(self) -> dict:
        record = {
            "model": self.model,
            "exponent_hat": self.exponent_hat,
            "intercept_hat": self.intercept_hat,
            "stderr": self.stderr,
            "window_lo": self.window[0],
            "window_hi": self.window[1],
            "residual_max": self.residual_max,
        }
        if self.flags:
            record["flags"] = list(self.flags)
        return record

    def to_json(self) -> str:
        return json.dumps(self.to_record(), indent=2, sort_keys=False) + "\n"


@dataclass(frozen=True)
class RatioReport:
    sup_ratio: float
    argmax_r: float
    left_label: str
    right_label: str

    def to_record(self) -> dict:
        return {
            "sup_ratio": self.sup_ratio,
            "argmax_r": self.argmax_r,
            "left_label": self.left_label,
            "right_label": self.right_label,
        }


def _ols(x: np.ndarray, y: np.ndarray):
    if x.size < MIN_POINTS:
        raise FitError(f"need at least {MIN_POINTS} points in the fit window, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise FitError("non-finite values in regression data")
    res = stats.linregress(x, y)
    resid = y - (res.intercept + res.slope * x)
    stderr = float(res.stderr) if np.isfinite(res.stderr) else 0.0
    return float(res.slope), float(res.intercept), stderr, float(np.max(np.abs(resid)))


def _select(profile: RadialProfile, window) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = DEFAULT_WINDOW if window is None else window
    mask = (profile.r >= lo) & (profile.r <= hi)
    return profile.r[mask], profile.values[mask]


def _boundary_log(r: np.ndarray) -> np.ndarray:
    return -np.log1p(-r)


def fit_growth_exponent(profile: RadialProfile, window=None) -> FitReport:
    """Slope of ``log M_p`` against ``log(1/(1 - r))``: the growth order ``beta``."""
    r, m = _select(profile, window)
    if np.any(m <= 0):
        raise FitError("growth fit needs strictly positive means")
    slope, icpt, se, rmax = _ols(_boundary_log(r), np.log(m))
    return FitReport("power_growth", slope, icpt, se, (float(r[0]), float(r[-1])), rmax, r.size)


def fit_log_power(profile: RadialProfile, p=None, window=None) -> FitReport:
    """Slope ``c`` in ``M_p**p ~ c log(1/(1 - r)) + b``."""
    p = profile.p if p is None else float(p)
    if math.isinf(p) or p <= 0:
        raise DomainError(f"log-power fit needs a finite positive p, got {p!r}")
    r, m = _select(profile, window)
    slope, icpt, se, rmax = _ols(_boundary_log(r), m**p)
    return FitReport("log_power", slope, icpt, se, (float(r[0]), float(r[-1])), rmax, r.size)


def split_window(profile: RadialProfile, window=None) -> tuple[tuple[float, float], tuple[float, float]]:
    """Lower and upper halves (by point count) of the radii inside ``window``."""
    r, _ = _select(profile, window)
    half = r.size // 2
    if half < MIN_POINTS:
        raise FitError(f"window holds {r.size} points; half-window fits need {2 * MIN_POINTS}")
    return (float(r[0]), float(r[half - 1])), (float(r[r.size - half]), float(r[-1]))


def half_window_fits(fitter: Callable, profile: RadialProfile, window=None, **kwargs):
    """Run ``fitter`` on both half-windows; returns ``(lower, upper)`` reports."""
    lower, upper = split_window(profile, window)
    return fitter(profile, window=lower, **kwargs), fitter(profile, window=upper, **kwargs)


def window_stable(a: float, b: float, tol: float) -> bool:
    """Half-window estimates agree when they differ by at most twice the claim's tolerance."""
    return abs(a - b) <= 2.0 * tol


def riesz_ratio(u_profile: RadialProfile, v_profile: RadialProfile) -> RatioReport:
    """``max_r M_p(r, v) / M_p(r, u)`` over a shared grid."""
    if u_profile.p != v_profile.p:
        raise PairingError(f"exponents differ: {u_profile.p} vs {v_profile.p}")
    if u_profile.r.shape != v_profile.r.shape or not np.array_equal(u_profile.r, v_profile.r):
        raise PairingError("profiles are sampled on different radius grids")
    if np.any(u_profile.values <= 0):
        raise DomainError("denominator profile has a zero mean")
    ratios = v_profile.values / u_profile.values
    i = int(np.argmax(ratios))
    return RatioReport(float(ratios[i]), float(u_profile.r[i]), v_profile.subject, u_profile.subject)


def hl_derivative_check(base: FitReport, deriv: FitReport, max_stderr: float = 0.05) -> float:
    """Exponent gap between the derivative and the function; Hardy-Littlewood predicts 1."""
    for name, fit in (("base", base), ("derivative", deriv)):
        if not fit.stderr < max_stderr:
            raise FitError(f"{name} fit has not converged: stderr {fit.stderr:.3g} >= {max_stderr}")
    return deriv.exponent_hat - base.exponent_hat


def weighted_radial_integral(profile: RadialProfile) -> float:
    """``int_0^{r_max} (1 - r)**(p - 1) M_p(r)**p dr`` for ``0 < p < 1``.

    ``M_p**p`` is taken constant on each subinterval (mean of its endpoint
    values, the first value extended down to ``r = 0``) and the weight is
    integrated exactly, which keeps the endpoint singularity out of the
    quadrature error.
    """
    p = profile.p
    if not 0 < p < 1:
        raise DomainError(f"the weighted integral is defined for 0 < p < 1, got p={p}")
    r = profile.r
    mp = profile.values**p
    if r[0] > 0:
        r = np.concatenate([[0.0], r])
        mp = np.concatenate([[mp[0]], mp])
    level = 0.5 * (mp[:-1] + mp[1:])
    weight = ((1.0 - r[:-1]) ** p - (1.0 - r[1:]) ** p) / p
    return float(np.sum(level * weight))


def lemma_dk3_functional(hprime_profile: RadialProfile, fp_norm: float) -> float:
    """``||f||_p**p`` divided by the weighted integral of ``M_p(r, h')**p``.

    For locally univalent sense-preserving ``f = h + conj(g)`` with ``f(0) = 0``
    and ``0 < p < 1`` this ratio is bounded by a constant independent of ``f``.
    """
    if not 0 < hprime_profile.p < 1:
        raise DomainError(f"need 0 < p < 1, got p={hprime_profile.p}")
    integral = weighted_radial_integral(hprime_profile)
    if integral <= 0:
        raise DomainError("weighted integral of M_p(r, h')**p vanishes")
    return float(fp_norm) / integral


def fit_holder_exponent(
    moduli: Sequence[tuple[float, float]],
    log_correction: bool = False,
    min_decades: float = 2.0,
) -> FitReport:
    """Fit a modulus of continuity.

    Plain: slope of ``log omega`` against ``log delta`` (the Hoelder exponent).
    With ``log_correction``: slope of ``omega/delta`` against ``log(1/delta)``;
    a positive slope signals a ``delta log(1/delta)`` modulus, i.e. not Lipschitz.
    """
    arr = np.asarray(moduli, dtype=float).reshape(-1, 2)
    d, w = arr[:, 0], arr[:, 1]
    if d.size < MIN_POINTS:
        raise FitError(f"need at least {MIN_POINTS} gaps, got {d.size}")
    if np.any(d <= 0):
        raise FitError("gaps must be positive")
    if math.log10(d.max() / d.min()) < min_decades - 1e-9:
        raise FitError(f"gaps must span at least {min_decades:g} decades")
    window = (float(d.min()), float(d.max()))
    if np.all(w == 0):
        if log_correction:
            raise DomainError("constant signal has no log-corrected modulus")
        return FitReport("holder", 1.0, 0.0, 0.0, window, 0.0, d.size, ("constant_signal",))
    if np.any(w <= 0):
        raise FitError("modulus of continuity vanishes on part of the range")
    if log_correction:
        slope, icpt, se, rmax = _ols(np.log(1.0 / d), w / d)
        return FitReport("holder_log", slope, icpt, se, window, rmax, d.size)
    slope, icpt, se, rmax = _ols(np.log(d), np.log(w))
    return FitReport("holder", slope, icpt, se, window, rmax, d.size)


def holder_derivative_check(
    u: BoundarySignal,
    alpha_claim: float,
    r_grid: Sequence[float] | None = None,
    window=None,
    M: int | None = None,
) -> FitReport:
    """Growth exponent of ``max |F'|`` for ``F`` the Schwarz extension of ``u``.

    Boundary data in the Hoelder class of order ``alpha`` should give exponent
    ``1 - alpha``.
    """
    if not 0 < alpha_claim <= 1:
        raise DomainError(f"alpha_claim must lie in (0, 1], got {alpha_claim!r}")
    F = schwarz_extension(u)
    grid = geometric_grid() if r_grid is None else r_grid
    prof = radial_profile(series_subject(derive_series(F), label="F'"), math.inf, grid, M)
    return fit_growth_exponent(prof, window)
