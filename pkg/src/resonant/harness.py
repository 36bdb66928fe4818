"""Convergence studies, conservation diagnostics and CSV output.

Only the temporal error is measured: the reference solution lives on the same
spatial grid as the runs under test.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from statistics import median
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .data import RoughDataSpec, make_initial_data, parse_data_spec
from .problems import EvolutionProblem, make_problem
from .schemes import SchemeKind, StepperConfig, evolve
from .spectral import Field, FourierGrid, sobolev_norm, to_physical

CONVERGENCE_COLUMNS = (
    "scheme", "equation", "n_modes", "sigma", "seed", "T", "tau", "l2_error", "hs_error", "retained",
)
DIAGNOSTICS_COLUMNS = ("scheme", "step", "t", "mass", "energy")


class ReferenceMismatchError(RuntimeError):
    """The primary and cross-check reference solutions disagree."""


def dyadic_taus(tau_max: float, tau_min: float) -> tuple[float, ...]:
    """``tau_max, tau_max/2, ...`` down to the last value >= ``tau_min``."""
    if not 0 < tau_min <= tau_max:
        raise ValueError(f"need 0 < tau_min <= tau_max, got {tau_min}, {tau_max}")
    taus = []
    tau = float(tau_max)
    while tau >= tau_min * (1 - 1e-12):
        taus.append(tau)
        tau /= 2.0
    return tuple(taus)


@dataclass(frozen=True)
class ConvergenceConfig:
    """Parameters of one convergence study.

    ``t_end`` is snapped to a multiple of the largest step; every step in
    ``taus`` must then divide it.  Errors below ``floor`` or above
    ``ceiling * ||u0||`` are excluded from the slope fit.
    """

    scheme: str
    taus: tuple
    n_modes: int = 256
    t_end: float = 1.0
    data: str = "two_mode:0.5:1:0.5:2"
    equation: str = "nls_cubic"
    equation_params: tuple = ()
    ref_factor: int = 32
    alpha: float = 1.0
    dealias: bool = False
    hs_index: float = 1.0
    floor: float = 1e-10
    ceiling: float = 1.0
    target_tol: float = 1e-6

    def __post_init__(self):
        SchemeKind.parse(self.scheme)
        taus = tuple(float(t) for t in self.taus)
        if not taus:
            raise ValueError("need at least one step size")
        if any(t <= 0 for t in taus) or any(a <= b for a, b in zip(taus, taus[1:])):
            raise ValueError(f"step sizes must be positive and strictly decreasing, got {taus}")
        if self.ref_factor < 16:
            raise ValueError(f"reference refinement factor must be >= 16, got {self.ref_factor}")
        n_coarse = max(1, round(self.t_end / taus[0]))
        t_end = n_coarse * taus[0]
        for tau in taus:
            ratio = t_end / tau
            if abs(ratio - round(ratio)) > 1e-9 * ratio:
                raise ValueError(f"T = {t_end} is not an integer multiple of tau = {tau}")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "t_end", t_end)
        parse_data_spec(self.data)

    @property
    def grid(self) -> FourierGrid:
        return FourierGrid(self.n_modes)

    @property
    def problem(self) -> EvolutionProblem:
        return make_problem(self.equation, **dict(self.equation_params))

    @property
    def data_spec(self):
        return parse_data_spec(self.data)

    def initial_data(self) -> Field:
        return make_initial_data(self.grid, self.data_spec)

    def steps(self, tau: float) -> int:
        return round(self.t_end / tau)

    def with_seed(self, seed: int) -> "ConvergenceConfig":
        spec = self.data_spec
        if not isinstance(spec, RoughDataSpec):
            raise ValueError("only rough data carries a seed")
        suffix = ":normalize" if spec.normalize else ""
        return replace(self, data=f"rough:{spec.sigma!r}:{seed}{suffix}")


@dataclass(frozen=True)
class ConvergenceRecord:
    tau: float
    l2_error: float
    hs_error: float
    retained: bool


@dataclass
class ConvergenceReport:
    scheme: str
    equation: str
    n_modes: int
    t_end: float
    sigma: Optional[float] = None
    seed: Optional[int] = None
    records: list = field(default_factory=list)
    slope: Optional[float] = None
    intercept: Optional[float] = None
    discarded: list = field(default_factory=list)
    reference_discrepancy: Optional[float] = None

    @property
    def insufficient_range(self) -> bool:
        return self.slope is None

    def retained_points(self) -> list[tuple[float, float]]:
        return [(r.tau, r.l2_error) for r in self.records if r.retained]


@dataclass
class DiagnosticsSeries:
    scheme: str
    tau: float
    records: list = field(default_factory=list)  # (step, t, mass, energy)

    @property
    def mass(self) -> np.ndarray:
        return np.array([r[2] for r in self.records])

    @property
    def energy(self) -> np.ndarray:
        return np.array([r[3] for r in self.records])


def fit_slope(points: Iterable[tuple[float, float]]) -> tuple[float, float]:
    """Least-squares line through ``(log tau, log error)``; returns (slope, intercept)."""
    pts = list(points)
    if len(pts) < 2:
        raise ValueError(f"need at least 2 points to fit a slope, got {len(pts)}")
    x, y = np.array(pts, dtype=float).T
    if np.any(~(x > 0)) or np.any(~(y > 0)):
        raise ValueError("step sizes and errors must be positive to fit a log-log slope")
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope), float(intercept)


def mass(u: Field) -> float:
    return sobolev_norm(u, 0.0) ** 2


def energy(u: Field) -> float:
    """``sum_k k^2 |u_k|^2 + 1/2 mean_j |u(x_j)|^4``."""
    k2 = u.grid.wavenumbers.astype(float) ** 2
    v = to_physical(u)
    return float(np.sum(k2 * np.abs(u.coeffs) ** 2) + 0.5 * np.mean(np.abs(v) ** 4))


def _checked_reference(cfg: ConvergenceConfig, u0: Optional[Field] = None) -> tuple[Field, float]:
    """Fine-step solution at ``cfg.t_end``.

    For cubic NLS the reference is res2 at step ``tau_min / ref_factor``,
    cross-validated by Strang splitting at the same step.  Other equations use
    general_res1, cross-checked at half that step.  Raises
    :class:`ReferenceMismatchError` if the two disagree by more than
    ``100 * cfg.target_tol`` in L2.
    """
    if u0 is None:
        u0 = cfg.initial_data()
    problem = cfg.problem
    tau_ref = cfg.taus[-1] / cfg.ref_factor
    n_ref = cfg.steps(cfg.taus[-1]) * cfg.ref_factor
    if problem.is_nls_cubic:
        primary, secondary = "res2", "strang"
        ref = evolve(primary, problem, u0, StepperConfig(tau_ref), n_ref)
        check = evolve(secondary, problem, u0, StepperConfig(tau_ref), n_ref)
    else:
        primary = secondary = "general_res1"
        ref = evolve(primary, problem, u0, StepperConfig(tau_ref, dealias=cfg.dealias), n_ref)
        check = evolve(secondary, problem, u0, StepperConfig(tau_ref / 2, dealias=cfg.dealias), 2 * n_ref)
    discrepancy = (ref - check).l2_norm()
    if not discrepancy <= 100 * cfg.target_tol:
        raise ReferenceMismatchError(
            f"reference solutions disagree: ||{primary} - {secondary}||_L2 = {discrepancy:.3e} "
            f"exceeds {100 * cfg.target_tol:.1e} ({primary} norm {ref.l2_norm():.6g}, "
            f"{secondary} norm {check.l2_norm():.6g}, step {tau_ref:g})"
        )
    return ref, discrepancy


def reference_solution(cfg: ConvergenceConfig, u0: Optional[Field] = None) -> Field:
    return _checked_reference(cfg, u0)[0]


reference_solution.__doc__ = _checked_reference.__doc__


def run_convergence(cfg: ConvergenceConfig, reference: Optional[Field] = None,
                    u0: Optional[Field] = None) -> ConvergenceReport:
    """Run the scheme at every step size and fit the L2 error slope.

    A precomputed ``reference`` (e.g. shared between schemes on the same data)
    skips the reference computation.
    """
    if u0 is None:
        u0 = cfg.initial_data()
    discrepancy = None
    if reference is None:
        reference, discrepancy = _checked_reference(cfg, u0)
    problem = cfg.problem
    spec = cfg.data_spec
    rough = isinstance(spec, RoughDataSpec)
    report = ConvergenceReport(
        scheme=SchemeKind.parse(cfg.scheme).value, equation=cfg.equation, n_modes=cfg.n_modes,
        t_end=cfg.t_end, sigma=spec.sigma if rough else None, seed=spec.seed if rough else None,
        reference_discrepancy=discrepancy,
    )
    ceiling = cfg.ceiling * u0.l2_norm()
    for tau in cfg.taus:
        step_cfg = StepperConfig(tau, filter_alpha=cfg.alpha, dealias=cfg.dealias)
        try:
            u = evolve(cfg.scheme, problem, u0, step_cfg, cfg.steps(tau))
            diff = u - reference
            l2, hs = diff.l2_norm(), sobolev_norm(diff, cfg.hs_index)
        except FloatingPointError:
            l2 = hs = math.inf
        keep = bool(np.isfinite(l2) and cfg.floor <= l2 <= ceiling)
        report.records.append(ConvergenceRecord(tau, l2, hs, keep))
        if not keep:
            report.discarded.append(tau)
    points = report.retained_points()
    if len(points) >= 3:
        report.slope, report.intercept = fit_slope(points)
    return report


def _run_seed(args):
    cfg, seed = args
    return run_convergence(cfg.with_seed(seed))


def run_seeds(cfg: ConvergenceConfig, seeds: Sequence[int], max_workers: int = 1) -> list[ConvergenceReport]:
    """One study per seed (rough data); results in the order of ``seeds``."""
    jobs = [(cfg, int(s)) for s in seeds]
    if max_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(_run_seed, jobs))
    return [_run_seed(job) for job in jobs]


def median_slope(reports: Sequence[ConvergenceReport]) -> Optional[float]:
    slopes = [r.slope for r in reports if r.slope is not None]
    return median(slopes) if slopes else None


def run_diagnostics(scheme, u0: Field, tau: float, n_steps: int, problem=None,
                    alpha: float = 1.0, dealias: bool = False) -> DiagnosticsSeries:
    """Mass and energy after every step, starting with the initial data."""
    kind = SchemeKind.parse(scheme)
    series = DiagnosticsSeries(kind.value, tau, [(0, 0.0, mass(u0), energy(u0))])

    def observe(n, u):
        series.records.append((n, n * tau, mass(u), energy(u)))

    evolve(kind, problem, u0, StepperConfig(tau, filter_alpha=alpha, dealias=dealias), n_steps, observe)
    return series


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _convergence_rows(reports: Sequence[ConvergenceReport]):
    for rep in reports:
        for rec in sorted(rep.records, key=lambda r: -r.tau):
            yield (rep.scheme, rep.equation, rep.n_modes, rep.sigma, rep.seed, rep.t_end,
                   rec.tau, rec.l2_error, rec.hs_error, rec.retained)


def emit_csv(obj: Union[ConvergenceReport, Sequence[ConvergenceReport], DiagnosticsSeries],
             destination) -> None:
    """Write a report, list of reports or diagnostics series as CSV.

    ``destination`` is a path or a text file object.  Rows are ordered by
    descending step size (convergence) or ascending time (diagnostics).
    """
    if isinstance(obj, DiagnosticsSeries):
        header = DIAGNOSTICS_COLUMNS
        rows = ((obj.scheme, n, t, m, e) for n, t, m, e in sorted(obj.records, key=lambda r: r[0]))
    else:
        reports = [obj] if isinstance(obj, ConvergenceReport) else list(obj)
        header = CONVERGENCE_COLUMNS
        rows = _convergence_rows(reports)

    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])

    if isinstance(destination, (str, os.PathLike)):
        try:
            with open(destination, "w", encoding="utf-8", newline="") as fh:
                write(fh)
        except OSError as exc:
            raise OSError(f"cannot write CSV to {os.fspath(destination)!r}: {exc.strerror or exc}") from exc
    else:
        write(destination)


def csv_text(obj) -> str:
    buf = io.StringIO()
    emit_csv(obj, buf)
    return buf.getvalue()
