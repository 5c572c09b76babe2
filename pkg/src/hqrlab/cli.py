"""Command-line front end: ``hqrlab <command> [options]``.

Artifacts go to ``--output`` when given, otherwise to stdout. Usage errors
exit with status 2, numerical failures with status 1 and a one-line
``module: message`` diagnostic on stderr.
"""
from __future__ import annotations

import json
import math
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import analysis as an
from . import verify as vf
from .boundary import BoundarySignal, conjugate_signal, format_signal_csv, modulus_of_continuity, read_signal_csv, schwarz_extension
from .catalog import DEFAULT_M, build_example, catalog_listing, example_kind, parse_example
from .errors import HqrError
from .means import PARTS, format_profile_csv, geometric_grid, harmonic_subject, parse_p, profile_to_json, radial_profile
from .series import AnalyticSeries, HarmonicMap, qr_constants

COMMANDS = ("means", "growth", "conjugate", "holder", "qr", "verify", "catalog")
J_MAX = 14


def _power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated settings shared by the experiment commands."""

    command: str
    subject: str = ""
    p: float = 2.0
    j_min: int = 1
    j_max: int = 12
    M: int | None = None
    N: int | None = None
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise click.UsageError(f"unknown command {self.command!r}")
        if not 1 <= self.j_min < self.j_max <= J_MAX:
            raise click.BadParameter(f"need 1 <= j_min < j_max <= {J_MAX}, got {self.j_min}..{self.j_max}", param_hint="--j")
        for name in ("M", "N"):
            value = getattr(self, name)
            if value is not None and not _power_of_two(value):
                raise click.BadParameter(f"must be a power of two, got {value}", param_hint=f"--{name}")
        if self.format not in ("csv", "json"):
            raise click.BadParameter(f"must be csv or json, got {self.format!r}", param_hint="--format")

    @property
    def degree(self) -> int:
        """Series truncation degree; defaults to ``2**(j_max + 5)``."""
        return self.N if self.N is not None else 1 << (self.j_max + 5)

    @property
    def r_grid(self) -> np.ndarray:
        return geometric_grid(self.j_min, self.j_max)


def _parse_j(ctx, param, value: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", value)
    if not m:
        raise click.BadParameter("expected j_min..j_max, e.g. 1..12")
    return int(m.group(1)), int(m.group(2))


def _parse_p_option(ctx, param, value: str) -> float:
    try:
        return parse_p(value)
    except (HqrError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from exc


def _error_module(exc: BaseException) -> str:
    tb = exc.__traceback__
    name = getattr(exc, "module", "hqrlab")
    while tb is not None:
        mod = tb.tb_frame.f_globals.get("__name__", "")
        if mod.startswith("hqrlab.") and mod != "hqrlab.cli":
            name = mod.split(".", 1)[1]
        tb = tb.tb_next
    return name


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except HqrError as exc:
            raise click.ClickException(f"{_error_module(exc)}: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


# -- subject resolution -------------------------------------------------------

def _load(subject: str, cfg: ExperimentConfig):
    """Catalog entry or CSV path -> series, harmonic map or boundary signal."""
    if subject.lower().endswith(".csv") or Path(subject).is_file():
        return read_signal_csv(subject)
    spec = parse_example(subject, cfg.degree, cfg.M or DEFAULT_M)
    return build_example(spec)


def _as_map(obj) -> HarmonicMap:
    if isinstance(obj, HarmonicMap):
        return obj
    if isinstance(obj, AnalyticSeries):
        return HarmonicMap(obj)
    if isinstance(obj, BoundarySignal):
        return HarmonicMap(schwarz_extension(obj))
    raise click.UsageError(f"cannot treat {type(obj).__name__} as a map")


def _as_boundary(obj, subject: str) -> BoundarySignal:
    if not isinstance(obj, BoundarySignal):
        raise click.BadParameter(f"{subject!r} is not boundary data (use a boundary family or a CSV file)", param_hint="--subject")
    return obj


def _profile(cfg: ExperimentConfig, part: str):
    f = _as_map(_load(cfg.subject, cfg))
    return radial_profile(harmonic_subject(f, part), cfg.p, cfg.r_grid, cfg.M)


# -- options ----------------------------------------------------------------

def _subject_option(required=True):
    return click.option("--subject", required=required, help="Catalog entry (see `hqrlab catalog`) or CSV path.")


_j_option = click.option("--j", "j", default="1..12", show_default=True, callback=_parse_j, help="Radii 1-2^-j for j in j_min..j_max.")
_p_option = click.option("--p", "p", default="2", show_default=True, callback=_parse_p_option, help="Exponent: number, fraction or inf.")
_part_option = click.option("--part", type=click.Choice(PARTS), default="re", show_default=True, help="re = u, im = v, abs = |f|.")
_N_option = click.option("--N", "N", type=int, default=None, help="Series degree (default 2^(j_max+5)).")
_M_option = click.option("--M", "M", type=int, default=None, help="Samples per circle or boundary grid size.")
_output_option = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None, help="Write the artifact here instead of stdout.")


@click.group(cls=_Group)
@click.version_option(package_name="artifact")
def cli():
    """Integral means, growth fits and quasiregular checks on the unit disk."""


@cli.command()
@_subject_option()
@_p_option
@_part_option
@_j_option
@_N_option
@_M_option
@_output_option
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
def means(subject, p, part, j, N, M, output, fmt):
    """Radial profile r -> M_p(r) of the chosen part."""
    cfg = ExperimentConfig("means", subject, p, j[0], j[1], M, N, output, fmt)
    prof = _profile(cfg, part)
    _emit(format_profile_csv(prof) if fmt == "csv" else profile_to_json(prof), output)


@cli.command()
@_subject_option()
@_p_option
@click.option("--part", type=click.Choice(PARTS), default="abs", show_default=True, help="re = u, im = v, abs = |f|.")
@_j_option
@_N_option
@_M_option
@_output_option
@click.option("--window-j", type=int, default=3, show_default=True, help="Fit radii with j >= this value.")
def growth(subject, p, part, j, N, M, output, window_j):
    """Fit the growth exponent of M_p(r) as r -> 1 (FitReport JSON)."""
    cfg = ExperimentConfig("growth", subject, p, j[0], j[1], M, N, output, "json")
    fit = an.fit_growth_exponent(_profile(cfg, part), window=(1.0 - 2.0**-window_j, 1.0))
    _emit(fit.to_json(), output)


@cli.command()
@_subject_option()
@_M_option
@_output_option
def conjugate(subject, M, output):
    """Boundary values of the harmonic conjugate v of u (CSV)."""
    cfg = ExperimentConfig("conjugate", subject, M=M)
    u = _as_boundary(_load(subject, cfg), subject)
    _emit(format_signal_csv(conjugate_signal(u)), output)


def _parse_deltas(ctx, param, value: str) -> np.ndarray:
    try:
        lo, hi, n = (s.strip() for s in value.split(","))
        deltas = np.geomspace(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise click.BadParameter("expected lo,hi,count, e.g. 1e-3,1e-1,9") from exc
    if not (0 < deltas[0] < deltas[-1]):
        raise click.BadParameter("need 0 < lo < hi")
    return deltas


@cli.command()
@_subject_option()
@_M_option
@click.option("--conjugate", "use_conjugate", is_flag=True, help="Measure the conjugate v instead of u.")
@click.option("--log-correction", is_flag=True, help="Fit omega/delta against log(1/delta).")
@click.option("--deltas", default="1e-3,1e-1,9", show_default=True, callback=_parse_deltas, help="Geometric gaps lo,hi,count.")
@_output_option
@click.option("--fit-output", type=click.Path(dir_okay=False), default=None, help="FitReport JSON path (default: appended as # lines).")
def holder(subject, M, use_conjugate, log_correction, deltas, output, fit_output):
    """Modulus of continuity (CSV) and its Hoelder fit (FitReport JSON)."""
    cfg = ExperimentConfig("holder", subject, M=M)
    s = _as_boundary(_load(subject, cfg), subject)
    if use_conjugate:
        s = conjugate_signal(s)
    moduli = modulus_of_continuity(s, deltas)
    fit = an.fit_holder_exponent(moduli, log_correction=log_correction)
    text = "delta,omega\n" + "".join(f"{d:.17g},{w:.17g}\n" for d, w in moduli)
    if fit_output:
        Path(fit_output).write_text(fit.to_json())
    else:
        text += "".join(f"# {line}\n" for line in fit.to_json().splitlines())
    _emit(text, output)


@cli.command()
@_subject_option()
@_j_option
@_N_option
@click.option("--n-theta", type=int, default=256, show_default=True, help="Angular samples per circle.")
@_output_option
def qr(subject, j, N, n_theta, output):
    """Measured dilatation bound k_hat and distortion K_hat (QrReport JSON)."""
    cfg = ExperimentConfig("qr", subject, j_min=j[0], j_max=j[1], N=N)
    f = _as_map(_load(subject, cfg))
    report = qr_constants(f, cfg.r_grid, n_theta)
    _emit(json.dumps(report.to_record(), indent=2) + "\n", output)


@cli.command("verify")
@click.option("--seed", type=int, default=None, help="Seed for the randomized checks (default 1).")
@click.option("--only", type=click.IntRange(1, len(vf.CRITERIA)), multiple=True, help="Run only these criteria.")
@click.option("--verbose", "-v", is_flag=True, help="Print per-case details.")
@click.pass_context
def verify_cmd(ctx, seed, only, verbose):
    """Run the acceptance suite; exit 0 iff every criterion passes."""
    if seed is not None:
        click.echo(f"# seed={seed}")

    def show(res):
        click.echo(res.line())
        if verbose:
            for line in res.details:
                click.echo(f"    {line}")

    results = vf.run_criteria(sorted(set(only)) or None, 1 if seed is None else seed, show)
    ctx.exit(0 if all(r.passed for r in results) else 1)


@cli.command()
def catalog():
    """List the named example families and their parameter syntax."""
    click.echo(catalog_listing(), nl=False)


def main(argv=None):
    return cli.main(args=argv, prog_name="hqrlab")


if __name__ == "__main__":
    sys.exit(main())
