"""Integral means ``M_p(r, f)`` over circles and radial profiles of them.

Circle averages use the uniform trapezoidal rule, which for periodic
integrands is the natural (and spectrally accurate) choice. ``p = inf`` is the
grid maximum, i.e. a lower bound on the true supremum.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, EvaluationError, HqrError
from .series import AnalyticSeries, HarmonicMap, circle_points, eval_on_circle

PARTS = ("re", "im", "abs")


def parse_p(p) -> float:
    """Accept ``2``, ``'1/2'``, ``'inf'``; reject ``p <= 0``."""
    if isinstance(p, str):
        text = p.strip().lower()
        if text in ("inf", "infinity", "oo"):
            value = math.inf
        elif "/" in text:
            num, den = text.split("/", 1)
            value = float(num) / float(den)
        else:
            value = float(text)
    else:
        value = float(p)
    if not value > 0:
        raise DomainError(f"exponent p must be positive or inf, got {p!r}")
    return value


def format_p(p: float) -> str:
    return "inf" if math.isinf(p) else repr(float(p))


def integral_mean(values, p) -> float:
    """``((1/M) sum |w_j|**p)**(1/p)``, or ``max |w_j|`` for ``p = inf``."""
    p = parse_p(p)
    w = np.abs(np.asarray(values))
    if w.size == 0:
        raise DomainError("integral_mean needs at least one sample")
    if math.isinf(p):
        return float(np.max(w))
    if p == 1:
        return float(np.mean(w))
    if p == 2:
        return float(np.sqrt(np.mean(w * w)))
    return float(np.mean(w**p) ** (1.0 / p))


@dataclass(frozen=True)
class Subject:
    """Something that can be sampled on circles ``|z| = r``.

    ``sampler(r, M)`` returns the ``M`` values at ``r exp(2 pi i j / M)``.
    ``degree`` (when known) sets the default circle resolution.
    """

    sampler: Callable[[float, int], np.ndarray]
    label: str
    degree: int | None = None
    analytic: bool = False

    def on_circle(self, r: float, M: int) -> np.ndarray:
        return self.sampler(r, M)

    def default_M(self) -> int:
        return default_samples(self.degree)


def default_samples(degree: int | None) -> int:
    """``max(4096, 4 N)`` rounded up to a power of two."""
    if degree is None:
        return 4096
    return max(4096, 1 << max(0, 4 * degree - 1).bit_length())


def _take_part(values: np.ndarray, part: str | None) -> np.ndarray:
    if part is None:
        return values
    if part == "re":
        return values.real
    if part == "im":
        return values.imag
    if part == "abs":
        return np.abs(values)
    raise DomainError(f"part must be one of {PARTS}, got {part!r}")


def series_subject(s: AnalyticSeries, part: str | None = None, label: str | None = None) -> Subject:
    _take_part(np.zeros(1, complex), part)
    return Subject(
        lambda r, M: _take_part(eval_on_circle(s, r, M), part),
        label or (f"series:{part}" if part else "series"),
        degree=s.N,
        analytic=part in (None, "abs"),
    )


def harmonic_subject(f: HarmonicMap, part: str | None = None, label: str | None = None) -> Subject:
    _take_part(np.zeros(1, complex), part)
    analytic = not np.any(f.g.coeffs) and part in (None, "abs")
    return Subject(
        lambda r, M: _take_part(f.on_circle(r, M), part),
        label or {None: "f", "re": "u", "im": "v", "abs": "|f|"}[part],
        degree=max(f.h.N, f.g.N),
        analytic=analytic,
    )


def callable_subject(func: Callable, label: str = "callable") -> Subject:
    """Wrap a pointwise function of ``z``."""
    return Subject(lambda r, M: np.asarray(func(circle_points(r, M))), label)


def as_subject(subject) -> Subject:
    if isinstance(subject, Subject):
        return subject
    if isinstance(subject, AnalyticSeries):
        return series_subject(subject)
    if isinstance(subject, HarmonicMap):
        return harmonic_subject(subject)
    if callable(subject):
        return callable_subject(subject, getattr(subject, "__name__", "callable"))
    raise TypeError(f"cannot sample {type(subject).__name__} on circles")


@dataclass(frozen=True)
class RadialProfile:
    """``(r, M_p(r))`` pairs for one exponent ``p``, ``r`` strictly increasing."""

    p: float
    r: np.ndarray
    values: np.ndarray
    subject: str = ""

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if r.shape != vals.shape or r.ndim != 1:
            raise DomainError("profile radii and values must be matching 1-d arrays")
        if r.size and (r[0] < 0 or r[-1] >= 1 or np.any(np.diff(r) <= 0)):
            raise DomainError("profile radii must increase strictly inside [0, 1)")
        if np.any(~np.isfinite(vals)) or np.any(vals < 0):
            raise DomainError("integral means must be finite and nonnegative")
        r.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "p", parse_p(self.p))

    @property
    def entries(self) -> list[tuple[float, float]]:
        return list(zip(self.r.tolist(), self.values.tolist()))

    def __len__(self):
        return self.r.size


def geometric_grid(j_min: int = 1, j_max: int = 12) -> np.ndarray:
    """Radii ``1 - 2**-j`` for ``j = j_min..j_max``."""
    return 1.0 - 2.0 ** -np.arange(j_min, j_max + 1, dtype=float)


def dense_grid(r_max: float, per_octave: int = 8, linear: int = 16) -> np.ndarray:
    """Grid covering ``[0, r_max]``: uniform on ``[0, 1/2]`` then geometric in ``1 - r``."""
    head = np.linspace(0.0, 0.5, linear + 1)
    top = -math.log2(1.0 - r_max)
    steps = int(math.ceil((top - 1.0) * per_octave))
    tail = 1.0 - 2.0 ** -np.linspace(1.0, top, steps + 1)[1:]
    return np.concatenate([head, tail])


def _max_workers() -> int:
    raw = os.environ.get("HQR_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError as exc:
        raise DomainError(f"HQR_THREADS must be an integer, got {raw!r}") from exc


def _check_grid(r_grid) -> np.ndarray:
    r = np.asarray(r_grid, dtype=float).ravel()
    if r.size == 0 or r[0] < 0 or r[-1] >= 1 or np.any(np.diff(r) <= 0):
        raise DomainError("r_grid must be strictly increasing inside [0, 1)")
    return r


def _sample_all(subject: Subject, radii: np.ndarray, M: int, reduce: Callable):
    def one(r):
        try:
            return reduce(subject.on_circle(float(r), M))
        except HqrError as exc:
            raise EvaluationError(float(r), exc) from exc

    workers = _max_workers()
    if workers == 1:
        return [one(r) for r in radii]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, radii))


def radial_profile(subject, p, r_grid: Sequence[float], M: int | None = None) -> RadialProfile:
    """Integral means of ``subject`` on each circle of ``r_grid``."""
    return radial_profiles(subject, [p], r_grid, M)[parse_p(p)]


def radial_profiles(subject, ps, r_grid: Sequence[float], M: int | None = None) -> dict[float, RadialProfile]:
    """Several exponents from a single sweep; keys are the parsed exponents."""
    subj = as_subject(subject)
    radii = _check_grid(r_grid)
    exps = [parse_p(p) for p in ps]
    M = M or subj.default_M()
    rows = _sample_all(subj, radii, M, lambda w: [integral_mean(w, p) for p in exps])
    table = np.asarray(rows, dtype=float).reshape(radii.size, len(exps))
    return {p: RadialProfile(p, radii, table[:, i], subj.label) for i, p in enumerate(exps)}


class HardyNormEstimate(NamedTuple):
    value: float
    monotone_tail: bool
    r_max: float


def hardy_norm_estimate(profile: RadialProfile, rtol: float = 1e-12) -> HardyNormEstimate:
    """Supremum of the profile, with a flag telling whether its upper half is nondecreasing.

    For analytic subjects with ``p >= 1`` the sup is the limit as ``r -> 1``;
    harmonic subjects with ``p < 1`` need not be monotone, hence the flag.
    """
    if len(profile) == 0:
        raise DomainError("empty profile")
    vals = profile.values
    tail = vals[len(vals) // 2 :]
    monotone = bool(np.all(np.diff(tail) >= -rtol * np.abs(tail[:-1])))
    return HardyNormEstimate(float(np.max(vals)), monotone, float(profile.r[-1]))


def format_profile_csv(profile: RadialProfile) -> str:
    lines = [f"# p={format_p(profile.p)}", f"# subject={profile.subject}", "r,Mp"]
    lines += [f"{r:.17g},{m:.17g}" for r, m in profile.entries]
    return "\n".join(lines) + "\n"


def profile_to_json(profile: RadialProfile) -> str:
    record = {
        "p": format_p(profile.p),
        "subject": profile.subject,
        "entries": [[r, m] for r, m in profile.entries],
    }
    return json.dumps(record, indent=2) + "\n"


def write_profile_csv(profile: RadialProfile, path) -> None:
    Path(path).write_text(format_profile_csv(profile))


def read_profile_csv(path) -> RadialProfile:
    p, subject, rows = None, "", []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            if key.strip() == "p":
                p = value.strip()
            elif key.strip() == "subject":
                subject = value.strip()
            continue
        if line.lower().startswith("r,"):
            continue
        r, m = line.split(",")
        rows.append((float(r), float(m)))
    if p is None:
        raise DomainError(f"{path}: missing '# p=' header")
    arr = np.asarray(rows, dtype=float).reshape(-1, 2)
    return RadialProfile(p, arr[:, 0], arr[:, 1], subject)
