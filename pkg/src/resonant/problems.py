"""Evolution equations ``du/dt - Sigma u = P(u, conj u)`` on the torus.

``Sigma`` is given through its Fourier symbol ``sigma(k)``; the nonlinearity is
a monomial ``c * u^ell * conj(u)^m`` plus an optional linear term ``gamma * u``
(used by the complex Ginzburg-Landau preset).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .spectral import Field, pointwise_power

PRESETS = ("nls_cubic", "heat_cubic", "ginzburg_landau")


def _nls_symbol(k):
    return -1j * np.asarray(k, dtype=float) ** 2


def _heat_symbol(k):
    return -np.asarray(k, dtype=float) ** 2 + 0j


@dataclass(frozen=True)
class EvolutionProblem:
    name: str
    sigma_symbol: Callable[[np.ndarray], np.ndarray]
    nl_coefficient: complex
    nl_exponents: tuple[int, int]
    linear_coefficient: complex = 0.0
    params: tuple = ()

    def __post_init__(self):
        ell, m = self.nl_exponents
        if ell < 0 or m < 0 or ell + m < 1:
            raise ValueError(f"nonlinearity exponents must satisfy ell + m >= 1, got {self.nl_exponents}")

    def sigma(self, k) -> np.ndarray:
        return np.asarray(self.sigma_symbol(np.asarray(k)), dtype=complex)

    def check_symbol(self, wavenumbers) -> None:
        """Reject symbols whose semigroup grows (Re sigma > 0)."""
        re = self.sigma(wavenumbers).real
        if np.any(re > 1e-14 * np.maximum(1.0, np.abs(re))):
            raise ValueError(f"{self.name}: Re sigma(k) > 0 for some k, exp(t Sigma) is unbounded")

    @property
    def is_nls_cubic(self) -> bool:
        return self.name == "nls_cubic"


def make_problem(preset: str, **params) -> EvolutionProblem:
    """Build a named equation.

    ``nls_cubic``
        ``i u_t = -u_xx + |u|^2 u``; sigma(k) = -i k^2, P = -i u^2 conj(u).
    ``heat_cubic``
        ``u_t = u_xx + c u^2 conj(u)``; keyword ``c`` (default -1).
    ``ginzburg_landau``
        ``u_t = alpha u_xx + gamma u (1 - |u|^2)``; keywords ``alpha``
        (Re alpha >= 0, default 1) and ``gamma`` (default 1).
    """
    if preset == "nls_cubic":
        if params:
            raise ValueError(f"nls_cubic takes no parameters, got {sorted(params)}")
        return EvolutionProblem("nls_cubic", _nls_symbol, -1j, (2, 1))
    if preset == "heat_cubic":
        c = complex(params.pop("c", -1.0))
        if params:
            raise ValueError(f"unknown heat_cubic parameters {sorted(params)}")
        return EvolutionProblem("heat_cubic", _heat_symbol, c, (2, 1), params=(("c", c),))
    if preset == "ginzburg_landau":
        alpha = complex(params.pop("alpha", 1.0))
        gamma = complex(params.pop("gamma", 1.0))
        if params:
            raise ValueError(f"unknown ginzburg_landau parameters {sorted(params)}")
        if alpha.real < 0:
            raise ValueError(f"ginzburg_landau needs Re(alpha) >= 0, got alpha={alpha}")

        def symbol(k, alpha=alpha):
            return -alpha * np.asarray(k, dtype=float) ** 2

        return EvolutionProblem(
            "ginzburg_landau", symbol, -gamma, (2, 1),
            linear_coefficient=gamma, params=(("alpha", alpha), ("gamma", gamma)),
        )
    raise ValueError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")


def evaluate_nonlinearity(p: EvolutionProblem, f: Field, dealias: bool = False) -> Field:
    """``P(u, conj u)`` for the field ``f``."""
    ell, m = p.nl_exponents
    out = p.nl_coefficient * pointwise_power(f, ell, m, dealias=dealias)
    if p.linear_coefficient:
        out = out + p.linear_coefficient * f
    return out
