"""Named example families and the ``name:key=value,...`` addressing used by the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundarySignal
from .errors import DomainError, NotQuasiregularError
from .series import AnalyticSeries, HarmonicMap, derive_series, integrate_series, multiply_series

DEFAULT_N = 4096
DEFAULT_M = 1 << 16


def make_power_singularity(beta: float, N: int = DEFAULT_N) -> AnalyticSeries:
    """Taylor coefficients of ``(1 - z)**(-beta)`` up to degree ``N``."""
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    n = np.arange(N, dtype=float)
    c = np.empty(N + 1)
    c[0] = 1.0
    c[1:] = np.cumprod((n + beta) / (n + 1.0))
    return AnalyticSeries(c)


def power_singularity_tail_bound(beta: float, N: int, r: float) -> float:
    """Upper bound on ``sum_{n > N} c_n r**n`` for ``(1 - z)**(-beta)``.

    Uses ``c_n <= c_N (n/N)**max(beta - 1, 0) <= c_N exp(gamma (n - N)/N)``.
    """
    c_N = float(make_power_singularity(beta, N).coeffs[-1].real)
    q = r * math.exp(max(beta - 1.0, 0.0) / N)
    if q >= 1:
        return math.inf
    return c_N * r**N * q / (1.0 - q)


def make_cayley(N: int = DEFAULT_N) -> AnalyticSeries:
    """``(1 + z)/(1 - z) = 1 + 2 sum z**n``; Re is the Poisson kernel, Im its conjugate."""
    c = np.full(N + 1, 2.0)
    c[0] = 1.0
    return AnalyticSeries(c)


def cayley_tail_bound(N: int, r: float) -> float:
    return 2.0 * r ** (N + 1) / (1.0 - r)


def _check_k(k: float) -> float:
    k = float(k)
    if k < 0:
        raise DomainError(f"dilatation bound must be nonnegative, got {k!r}")
    if k >= 1:
        raise NotQuasiregularError(f"dilatation bound k={k!r} is not below 1")
    return k


def make_constant_dilatation_qr(h: AnalyticSeries, k: float) -> HarmonicMap:
    """``f = h + k conj(h - h(0))``: dilatation identically ``k``."""
    k = _check_k(k)
    gc = k * h.coeffs
    gc[0] = 0.0
    return HarmonicMap(h, AnalyticSeries(gc))


def make_dilatation_qr(h: AnalyticSeries, omega: AnalyticSeries) -> HarmonicMap:
    """Map with prescribed dilatation: ``g' = omega h'`` exactly, ``g(0) = 0``.

    ``g`` keeps the full product degree ``h.N + omega.N`` so that the identity
    survives truncation.
    """
    hp = derive_series(h)
    gp = multiply_series(omega, hp, N=omega.N + hp.N)
    return HarmonicMap(h, integrate_series(gp))


def make_linear_dilatation_qr(h: AnalyticSeries, k: float) -> HarmonicMap:
    """Dilatation ``omega(z) = k z``; quasiregular with bound ``k``, attained only as ``|z| -> 1``."""
    k = _check_k(k)
    return make_dilatation_qr(h, AnalyticSeries([0.0, k]))


def _grid_offsets(M: int) -> np.ndarray:
    # signed index m in (-M/2, M/2] so that theta_j = 2 pi m / M is mapped into (-pi, pi]
    j = np.arange(M)
    return np.where(j <= M // 2, j, j - M)


def make_holder_boundary(alpha: float, M: int = DEFAULT_M) -> BoundarySignal:
    """Samples of ``|theta|**alpha`` for ``theta`` in ``(-pi, pi]``."""
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha!r}")
    t = np.abs(2 * np.pi * _grid_offsets(M) / M)
    return BoundarySignal(t if alpha == 1 else t**alpha)


def make_abs_theta_boundary(M: int = DEFAULT_M) -> BoundarySignal:
    """Samples of ``|theta|`` for ``theta`` in ``(-pi, pi]`` (Lipschitz, with a kink at 0)."""
    return make_holder_boundary(1.0, M)


# -- addressing -------------------------------------------------------------

@dataclass(frozen=True)
class ExampleSpec:
    name: str
    params: dict = field(default_factory=dict)
    N: int = DEFAULT_N
    M: int = DEFAULT_M

    def __str__(self):
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(f"{k}={v}" for k, v in self.params.items())


# name -> (kind, required params, optional params with defaults, description)
REGISTRY = {
    "power_singularity": ("series", ("beta",), {}, "(1-z)^(-beta), binomial coefficients"),
    "cayley": ("series", (), {}, "(1+z)/(1-z); Re = Poisson kernel, Im = conjugate Poisson kernel"),
    "const_dilatation": (
        "harmonic",
        ("k",),
        {"h": "power_singularity"},
        "h + k*conj(h - h(0)) with h any series family (its params follow)",
    ),
    "linear_dilatation": (
        "harmonic",
        ("k",),
        {"h": "power_singularity"},
        "dilatation omega(z) = k z over a series family h (its params follow)",
    ),
    "abs_theta": ("boundary", (), {}, "|theta| on (-pi, pi]"),
    "holder": ("boundary", ("alpha",), {}, "|theta|^alpha on (-pi, pi], 0 < alpha <= 1"),
}

_SCHEMAS = {
    "power_singularity": "power_singularity:beta=<x>",
    "cayley": "cayley",
    "const_dilatation": "const_dilatation:k=<x>,h=<name>[,<h params>]",
    "linear_dilatation": "linear_dilatation:k=<x>,h=<name>[,<h params>]",
    "abs_theta": "abs_theta",
    "holder": "holder:alpha=<x>",
}


def catalog_listing() -> str:
    """One line per registered family: schema, kind, description."""
    lines = []
    for name, (kind, _, _, desc) in REGISTRY.items():
        lines.append(f"{_SCHEMAS[name]:<50} [{kind}] {desc}")
    return "\n".join(lines) + "\n"


def parse_example(text: str, N: int = DEFAULT_N, M: int = DEFAULT_M) -> ExampleSpec:
    """Parse ``name[:key=value,...]``."""
    name, _, rest = text.strip().partition(":")
    name = name.strip()
    if name not in REGISTRY:
        raise DomainError(f"unknown example {name!r}; known: {', '.join(REGISTRY)}")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise DomainError(f"malformed parameter {item!r} in {text!r}")
        params[key.strip()] = value.strip()
    _, required, optional, _ = REGISTRY[name]
    missing = [k for k in required if k not in params]
    if missing:
        raise DomainError(f"{name} needs parameter(s) {', '.join(missing)}")
    for key, default in optional.items():
        params.setdefault(key, default)
    return ExampleSpec(name, params, N, M)


def example_kind(spec: ExampleSpec) -> str:
    return REGISTRY[spec.name][0]


def _float(spec: ExampleSpec, key: str) -> float:
    try:
        return float(spec.params[key])
    except (KeyError, ValueError) as exc:
        raise DomainError(f"{spec.name}: parameter {key} must be a number") from exc


def build_example(spec: ExampleSpec):
    """Instantiate an :class:`ExampleSpec` as a series, harmonic map or boundary signal."""
    if spec.name == "power_singularity":
        return make_power_singularity(_float(spec, "beta"), spec.N)
    if spec.name == "cayley":
        return make_cayley(spec.N)
    if spec.name in ("const_dilatation", "linear_dilatation"):
        inner = {k: v for k, v in spec.params.items() if k not in ("k", "h")}
        h_spec = ExampleSpec(spec.params["h"], inner, spec.N, spec.M)
        if h_spec.name not in REGISTRY or example_kind(h_spec) != "series":
            raise DomainError(f"h must name a series family, got {h_spec.name!r}")
        h_spec = parse_example(str(h_spec), spec.N, spec.M)
        h = build_example(h_spec)
        k = _float(spec, "k")
        if spec.name == "const_dilatation":
            return make_constant_dilatation_qr(h, k)
        return make_linear_dilatation_qr(h, k)
    if spec.name == "abs_theta":
        return make_abs_theta_boundary(spec.M)
    if spec.name == "holder":
        return make_holder_boundary(_float(spec, "alpha"), spec.M)
    raise DomainError(f"unknown example {spec.name!r}")
