"""Numerical laboratory for harmonic quasiregular maps of the unit disk."""
from .errors import (
    CriticalPointError,
    DomainError,
    EvaluationError,
    FitError,
    HqrError,
    NotQuasiregularError,
    PairingError,
)
from .series import (
    AnalyticSeries,
    HarmonicMap,
    QrReport,
    analytic_completion,
    derive_series,
    dilatation,
    eval_harmonic,
    eval_on_circle,
    eval_series,
    qr_constants,
)
from .boundary import (
    BoundarySignal,
    FourierCoeffs,
    conjugate_signal,
    fourier_analyze,
    fourier_synthesize,
    modulus_of_continuity,
    schwarz_derivative_bound,
    schwarz_extension,
)
from .means import RadialProfile, hardy_norm_estimate, integral_mean, radial_profile
from .analysis import (
    FitReport,
    RatioReport,
    fit_growth_exponent,
    fit_holder_exponent,
    fit_log_power,
    hl_derivative_check,
    holder_derivative_check,
    lemma_dk3_functional,
    riesz_ratio,
)

__version__ = "0.1.0"
