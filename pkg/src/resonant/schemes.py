"""One-step integrators for cubic NLS and the general evolution equation.

All steppers map Fourier coefficients to Fourier coefficients.  Multipliers
depending only on (grid, tau) are computed once per :class:`Stepper`, so
repeated stepping costs a handful of FFTs and pointwise products.

Sign conventions (``i u_t = -u_xx + |u|^2 u``):

* ``exp(i t Laplacian)`` multiplies mode ``k`` by ``exp(-i t k^2)``;
* ``phi(-2 i tau Laplacian)`` applied to ``conj(u)`` is realized by taking the
  conjugate in physical space and multiplying its coefficients by
  ``phi(2 i tau k^2)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .problems import EvolutionProblem, make_problem
from .spectral import Field, FourierGrid, fft_forward, fft_inverse, phi1, phi2


class SchemeKind(str, enum.Enum):
    LIE = "lie"
    STRANG = "strang"
    EXP1 = "exp1"
    RES1 = "res1"
    RES2 = "res2"
    FILTERED_LIE = "filtered_lie"
    GENERAL_RES1 = "general_res1"

    @classmethod
    def parse(cls, name) -> "SchemeKind":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name))
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown scheme {name!r}; valid schemes: {valid}") from None


NLS_ONLY = frozenset(k for k in SchemeKind if k is not SchemeKind.GENERAL_RES1)


class BlowUpError(FloatingPointError):
    """Raised when a trajectory produces non-finite coefficients."""

    def __init__(self, step: int, kind=None):
        self.step = step
        self.kind = kind
        name = f"{kind.value} " if kind is not None else ""
        super().__init__(f"{name}run produced non-finite values at step {step}")


@dataclass(frozen=True)
class StepperConfig:
    tau: float
    filter_alpha: float = 1.0
    dealias: bool = False

    def __post_init__(self):
        if not np.isfinite(self.tau) or self.tau == 0:
            raise ValueError(f"step size must be finite and nonzero, got {self.tau}")
        if self.filter_alpha < 1:
            raise ValueError(f"filter_alpha must be >= 1, got {self.filter_alpha}")


def filter_cutoff(tau: float, alpha: float = 1.0) -> float:
    """Frequency cut-off ``K = |tau|^(-alpha/2)`` of the filtered Lie splitting."""
    return abs(tau) ** (-alpha / 2.0)


def check_filter(grid: FourierGrid, tau: float, alpha: float = 1.0) -> float:
    K = filter_cutoff(tau, alpha)
    if np.floor(K) > grid.n_modes // 2 - 1:
        raise ValueError(
            f"filter cut-off K = |tau|^(-alpha/2) = {K:.6g} exceeds the largest "
            f"resolved wavenumber {grid.n_modes // 2 - 1} (N={grid.n_modes}, tau={tau:g}, "
            f"alpha={alpha:g}); increase N or tau"
        )
    return K


class Stepper:
    """Precomputed one-step map ``coeffs -> coeffs`` for a fixed grid and step."""

    def __init__(self, kind, grid: FourierGrid, cfg: StepperConfig,
                 problem: Optional[EvolutionProblem] = None):
        self.kind = SchemeKind.parse(kind)
        self.grid = grid
        self.cfg = cfg
        if problem is None:
            problem = make_problem("nls_cubic")
        if self.kind in NLS_ONLY and not problem.is_nls_cubic:
            raise ValueError(f"scheme {self.kind.value} is defined for nls_cubic only, got {problem.name}")
        self.problem = problem
        tau = cfg.tau
        k = grid.wavenumbers.astype(float)
        k2 = k**2
        self._mask = grid.dealias_mask() if cfg.dealias else None
        # coefficients of conj(u) are conj(u_hat[-k])
        self._neg = (-grid.wavenumbers) % grid.n_modes
        self._prop = np.exp(-1j * tau * k2)

        if self.kind is SchemeKind.STRANG:
            self._half = np.exp(-0.5j * tau * k2)
        elif self.kind is SchemeKind.EXP1:
            self._phi = phi1(-1j * tau * k2)
        elif self.kind is SchemeKind.RES1:
            self._phi = phi1(2j * tau * k2)
        elif self.kind is SchemeKind.RES2:
            p1 = phi1(2j * tau * k2)
            p2 = phi2(2j * tau * k2)
            self._phi_a = p1 - p2
            self._phi_b = p2 * self._prop
        elif self.kind is SchemeKind.FILTERED_LIE:
            K = check_filter(grid, tau, cfg.filter_alpha)
            self.cutoff = K
            self._filter = np.abs(k) <= K
        elif self.kind is SchemeKind.GENERAL_RES1:
            problem.check_symbol(grid.wavenumbers)
            sigma = problem.sigma(grid.wavenumbers)
            self._prop = np.exp(tau * sigma)
            self._phi = phi1(tau * (-sigma + np.conj(sigma)))

        self._impl: Callable[[np.ndarray], np.ndarray] = getattr(self, f"_{self.kind.value}")

    def __call__(self, coeffs: np.ndarray) -> np.ndarray:
        return self._impl(coeffs)

    def step(self, u: Field) -> Field:
        return Field(u.grid, self._impl(u.coeffs))

    def _trunc(self, c):
        return c if self._mask is None else np.where(self._mask, c, 0.0)

    def _conj_hat(self, c):
        return np.conj(c[self._neg])

    def _kick(self, c):
        """Exact flow of ``i u_t = |u|^2 u`` over one step, in physical space."""
        u = fft_inverse(c)
        return self._trunc(fft_forward(np.exp(-1j * self.cfg.tau * (u.real**2 + u.imag**2)) * u))

    def _lie(self, c):
        return self._prop * self._kick(c)

    def _strang(self, c):
        return self._half * self._kick(self._half * c)

    def _exp1(self, c):
        u = fft_inverse(c)
        cubic = self._trunc(fft_forward((u.real**2 + u.imag**2) * u))
        return self._prop * c - 1j * self.cfg.tau * self._phi * cubic

    def _res1(self, c):
        u = fft_inverse(c)
        w = fft_inverse(self._phi * self._conj_hat(c))
        g = self._trunc(fft_forward(u * u * w))
        return self._prop * (c - 1j * self.cfg.tau * g)

    def _res2(self, c):
        tau = self.cfg.tau
        u = fft_inverse(c)
        ubar_hat = self._conj_hat(c)
        a = fft_inverse(self._phi_a * ubar_hat)
        b = fft_inverse(self._phi_b * ubar_hat)
        v = fft_inverse(self._prop * c)
        mod2 = u.real**2 + u.imag**2
        term_a = self._trunc(fft_forward(u * u * a))
        rest = self._trunc(fft_forward(-1j * tau * (v * v * b) - 0.5 * tau**2 * mod2 * mod2 * u))
        return self._prop * (c - 1j * tau * term_a) + rest

    def _filtered_lie(self, c):
        v = np.where(self._filter, c, 0.0)
        kicked = self._kick(v)
        return self._prop * np.where(self._filter, kicked, 0.0)

    def _general_res1(self, c):
        p = self.problem
        ell, m = p.nl_exponents
        u = fft_inverse(c)
        g = u**ell
        if m:
            w = fft_inverse(self._phi * self._conj_hat(c))
            g = g * w**m
        g_hat = p.nl_coefficient * self._trunc(fft_forward(g))
        if p.linear_coefficient:
            g_hat = g_hat + p.linear_coefficient * c
        return self._prop * (c + self.cfg.tau * g_hat)


def _one_step(kind, u: Field, tau: float, problem=None, alpha: float = 1.0, dealias: bool = False) -> Field:
    cfg = StepperConfig(tau, filter_alpha=alpha, dealias=dealias)
    return Stepper(kind, u.grid, cfg, problem).step(u)


def lie_step(u: Field, tau: float) -> Field:
    """Lie splitting: kinetic flow after the exact nonlinear phase rotation."""
    return _one_step(SchemeKind.LIE, u, tau)


def strang_step(u: Field, tau: float) -> Field:
    """Strang splitting: half kinetic, full nonlinear, half kinetic."""
    return _one_step(SchemeKind.STRANG, u, tau)


def exp1_step(u: Field, tau: float) -> Field:
    """First-order exponential integrator ``e^{i tau Lap} u - i tau phi1(i tau Lap) |u|^2 u``."""
    return _one_step(SchemeKind.EXP1, u, tau)


def res1_step(u: Field, tau: float) -> Field:
    """First-order resonance-based step.

    ``e^{i tau Lap} [u - i tau u^2 phi1(-2 i tau Lap) conj(u)]``: the dominant
    frequency interaction ``2 k2^2`` is integrated exactly.
    """
    return _one_step(SchemeKind.RES1, u, tau)


def res2_step(u: Field, tau: float) -> Field:
    """Second-order resonance-based step (explicit, not symmetric)."""
    return _one_step(SchemeKind.RES2, u, tau)


def filtered_lie_step(u: Field, tau: float, alpha: float = 1.0) -> Field:
    """Lie splitting of the equation projected onto ``|k| <= |tau|^(-alpha/2)``."""
    return _one_step(SchemeKind.FILTERED_LIE, u, tau, alpha=alpha)


def general_res1_step(p: EvolutionProblem, u: Field, tau: float) -> Field:
    """``e^{tau Sigma} [u + tau P(u, phi1(tau(-Sigma + conj Sigma)) conj u)]``."""
    return _one_step(SchemeKind.GENERAL_RES1, u, tau, problem=p)


def evolve(kind, p: Optional[EvolutionProblem], u0: Field, cfg: StepperConfig,
           n_steps: int, observer: Optional[Callable[[int, Field], None]] = None) -> Field:
    """Apply ``n_steps`` steps of the chosen scheme starting from ``u0``.

    ``observer(n, u_n)`` is called after every step (n = 1..n_steps).  A
    :class:`BlowUpError` naming the step index is raised as soon as a
    non-finite coefficient appears.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be nonnegative, got {n_steps}")
    stepper = Stepper(kind, u0.grid, cfg, p)
    c = u0.coeffs
    for n in range(1, n_steps + 1):
        # overflow is reported through BlowUpError, not numpy warnings
        with np.errstate(over="ignore", invalid="ignore"):
            c = stepper(c)
        if not np.isfinite(c).all():
            raise BlowUpError(n, stepper.kind)
        if observer is not None:
            observer(n, Field(u0.grid, c))
    return Field(u0.grid, c)


def symmetry_defect(kind, u: Field, tau: float, problem=None, alpha: float = 1.0) -> float:
    """``|| Phi_{-tau}(Phi_tau(u)) - u ||_{L^2}``; zero for symmetric methods."""
    forward = Stepper(kind, u.grid, StepperConfig(tau, filter_alpha=alpha), problem)
    backward = Stepper(kind, u.grid, StepperConfig(-tau, filter_alpha=alpha), problem)
    back = backward(forward(u.coeffs))
    return float(np.sqrt(np.sum(np.abs(back - u.coeffs) ** 2)))
