"""Fourier pseudospectral machinery on the torus [0, 2*pi).

Fields are stored by their Fourier coefficients ``u_hat[k]`` with the
normalization ``u(x) = sum_k u_hat[k] exp(i k x)``, so the forward transform
carries the ``1/N`` factor.  Coefficient arrays use the FFT ordering
``k = 0, 1, ..., N/2-1, -N/2, ..., -1``; use :meth:`Field.coefficient` or
:attr:`FourierGrid.wavenumbers` to address them by wavenumber.

Derivatives and linear propagators are applied in Fourier space, products
are formed in physical space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np
import scipy.fft

ArrayLike = Union[np.ndarray, complex, float]
MultiplierSymbol = Callable[[np.ndarray], ArrayLike]

# below this modulus the phi-functions switch to their Taylor series
PHI_SERIES_THRESHOLD = 1e-2
_SERIES_TERMS = 10


def fft_forward(samples: np.ndarray) -> np.ndarray:
    """Physical samples -> Fourier coefficients (FFT order, 1/N scaling)."""
    return scipy.fft.fft(samples, norm="forward")


def fft_inverse(coeffs: np.ndarray) -> np.ndarray:
    """Fourier coefficients (FFT order) -> physical samples."""
    return scipy.fft.ifft(coeffs, norm="forward")


@dataclass(frozen=True)
class FourierGrid:
    """Uniform collocation grid with ``n_modes`` points on [0, 2*pi)."""

    n_modes: int

    def __post_init__(self):
        n = self.n_modes
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise TypeError(f"n_modes must be an integer, got {n!r}")
        if n < 4 or n % 2:
            raise ValueError(f"n_modes must be even and >= 4, got {n}")

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order, covering -N/2 .. N/2-1."""
        k = np.rint(scipy.fft.fftfreq(self.n_modes, d=1.0 / self.n_modes)).astype(np.int64)
        k.setflags(write=False)
        return k

    @cached_property
    def points(self) -> np.ndarray:
        x = 2.0 * np.pi * np.arange(self.n_modes) / self.n_modes
        x.setflags(write=False)
        return x

    @property
    def k_min(self) -> int:
        return -self.n_modes // 2

    @property
    def k_max(self) -> int:
        return self.n_modes // 2 - 1

    def index(self, k: int) -> int:
        """Position of wavenumber ``k`` in a coefficient array."""
        if not self.k_min <= k <= self.k_max:
            raise IndexError(f"wavenumber {k} outside [{self.k_min}, {self.k_max}]")
        return int(k) % self.n_modes

    def zeros(self) -> "Field":
        return Field(self, np.zeros(self.n_modes, dtype=complex))

    def mode(self, k: int, amplitude: complex = 1.0) -> "Field":
        """Single Fourier mode ``amplitude * exp(i k x)``."""
        c = np.zeros(self.n_modes, dtype=complex)
        c[self.index(k)] = amplitude
        return Field(self, c)

    def evaluate(self, symbol: MultiplierSymbol) -> np.ndarray:
        """Sample a multiplier symbol on the wavenumbers (FFT order)."""
        values = np.asarray(symbol(self.wavenumbers), dtype=complex)
        return np.broadcast_to(values, (self.n_modes,)).copy()

    def dealias_mask(self) -> np.ndarray:
        """Boolean mask keeping modes with |k| < N/3 (2/3 rule)."""
        return np.abs(self.wavenumbers) < self.n_modes / 3.0


class Field:
    """Complex function on a :class:`FourierGrid`, held as Fourier coefficients.

    Instances are immutable; every operation returns a new field.
    """

    __slots__ = ("grid", "coeffs")

    def __init__(self, grid: FourierGrid, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.shape != (grid.n_modes,):
            raise ValueError(
                f"expected {grid.n_modes} coefficients, got array of shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def from_physical(cls, grid: FourierGrid, samples) -> "Field":
        return to_spectral(grid, samples)

    def to_physical(self) -> np.ndarray:
        return to_physical(self)

    def coefficient(self, k: int) -> complex:
        return complex(self.coeffs[self.grid.index(k)])

    def coefficients_by_wavenumber(self) -> tuple[np.ndarray, np.ndarray]:
        """Wavenumbers -N/2..N/2-1 in ascending order with matching coefficients."""
        k = scipy.fft.fftshift(self.grid.wavenumbers)
        return k, scipy.fft.fftshift(self.coeffs)

    def l2_norm(self) -> float:
        return sobolev_norm(self, 0.0)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    def _check_grid(self, other: "Field"):
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")

    def __add__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        self._check_grid(other)
        return Field(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        self._check_grid(other)
        return Field(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, Field):
            return NotImplemented
        return Field(self.grid, complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self):
        return Field(self.grid, -self.coeffs)

    def __repr__(self):
        return f"Field(n_modes={self.grid.n_modes}, l2={self.l2_norm():.6g})"


def to_physical(f: Field) -> np.ndarray:
    """Samples ``u(x_j) = sum_k u_hat[k] exp(i k x_j)`` at the collocation points."""
    return fft_inverse(f.coeffs)


def to_spectral(grid: FourierGrid, samples) -> Field:
    """Fourier coefficients ``u_hat[k] = (1/N) sum_j u(x_j) exp(-i k x_j)``."""
    samples = np.asarray(samples)
    if samples.shape != (grid.n_modes,):
        raise ValueError(
            f"expected {grid.n_modes} samples, got array of shape {samples.shape}"
        )
    return Field(grid, fft_forward(samples.astype(complex)))


def apply_multiplier(f: Field, m: MultiplierSymbol) -> Field:
    """Fourier multiplier: ``u_hat[k] -> m(k) * u_hat[k]``."""
    return Field(f.grid, f.grid.evaluate(m) * f.coeffs)


def free_flow_symbol(t: float) -> MultiplierSymbol:
    return lambda k: np.exp(-1j * t * np.asarray(k, dtype=float) ** 2)


def free_flow(f: Field, t: float) -> Field:
    """Linear Schroedinger group ``exp(i t Laplacian)``: multiplies by exp(-i k^2 t)."""
    return apply_multiplier(f, free_flow_symbol(t))


def _series(z: np.ndarray, coefs: list[float]) -> np.ndarray:
    out = np.zeros_like(z)
    for c in reversed(coefs):
        out = out * z + c
    return out


# Taylor coefficients: phi1 -> 1/(n+1)!,  phi2 -> (n+1)/(n+2)!
_PHI1_COEFS = [1.0 / math.factorial(n + 1) for n in range(_SERIES_TERMS)]
_PHI2_COEFS = [(n + 1.0) / math.factorial(n + 2) for n in range(_SERIES_TERMS)]


def _phi(z, coefs, direct):
    z = np.asarray(z, dtype=complex)
    small = np.abs(z) < PHI_SERIES_THRESHOLD
    out = np.empty_like(z)
    out[small] = _series(z[small], coefs)
    zl = z[~small]
    out[~small] = direct(zl)
    return out if out.ndim else complex(out)


def phi1(z):
    """phi1(z) = (exp(z) - 1) / z, entire with phi1(0) = 1.

    Vectorized over arrays; a Taylor series is used for ``|z| < 1e-2``.
    """
    return _phi(z, _PHI1_COEFS, lambda w: np.expm1(w) / w)


def phi2(z):
    """phi2(z) = (exp(z) - phi1(z)) / z, with phi2(0) = 1/2."""
    return _phi(z, _PHI2_COEFS, lambda w: (np.exp(w) - np.expm1(w) / w) / w)


def project(f: Field, K: float) -> Field:
    """Frequency cut-off: zero every coefficient with |k| > K."""
    return Field(f.grid, np.where(np.abs(f.grid.wavenumbers) <= K, f.coeffs, 0.0))


def sobolev_norm(f: Field, s: float) -> float:
    """``(sum_k <k>^(2s) |u_hat[k]|^2)^(1/2)`` with ``<k> = (1 + k^2)^(1/2)``."""
    weight = (1.0 + f.grid.wavenumbers.astype(float) ** 2) ** s
    return float(np.sqrt(np.sum(weight * np.abs(f.coeffs) ** 2)))


def pointwise_power(f: Field, ell: int, m: int, dealias: bool = False) -> Field:
    """The monomial ``u^ell * conj(u)^m`` formed in physical space.

    With ``dealias=True`` the upper third of the spectrum is removed before
    and after the product.
    """
    if ell < 0 or m < 0 or ell + m < 1:
        raise ValueError(f"need nonnegative exponents with ell + m >= 1, got ({ell}, {m})")
    c = f.coeffs
    if dealias:
        mask = f.grid.dealias_mask()
        c = np.where(mask, c, 0.0)
    u = fft_inverse(c)
    prod = u**ell * np.conj(u) ** m
    out = fft_forward(prod)
    if dealias:
        out = np.where(mask, out, 0.0)
    return Field(f.grid, out)
