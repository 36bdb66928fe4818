"""Initial data: seeded rough fields, smooth presets, exact plane waves.

Rough fields draw their coefficients from a splitmix64 stream so a given
(sigma, seed, N, normalize) produces bit-identical data on every platform.
The draw order is k = -N/2, ..., N/2-1 and, for each k, the real part
before the imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import Field, FourierGrid, sobolev_norm

_MASK64 = (1 << 64) - 1
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the splitmix64 generator seeded with ``seed``.

    splitmix64 is counter based (state_n = seed + n * golden), so the stream is
    generated in one vectorized pass.
    """
    with np.errstate(over="ignore"):
        n = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(seed & _MASK64) + n * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def uniform_pm1(seed: int, count: int) -> np.ndarray:
    """Uniform doubles on [-1, 1) from the top 53 bits of splitmix64."""
    bits = splitmix64(seed, count) >> np.uint64(11)
    return 2.0 * (bits.astype(np.float64) * 2.0**-53) - 1.0


@dataclass(frozen=True)
class RoughDataSpec:
    sigma: float
    seed: int = 0
    normalize: bool = False

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")


def rough_field(grid: FourierGrid, spec: RoughDataSpec) -> Field:
    """Random field at the borderline of H^sigma.

    ``u_hat[k] = <k>^{-(sigma + 1/2)} (a_k + i b_k)`` with ``a_k, b_k`` uniform
    on [-1, 1).  The result lies in H^s for every s < sigma but not in H^sigma
    uniformly in N.
    """
    n = grid.n_modes
    draws = uniform_pm1(spec.seed, 2 * n)
    ab = draws[0::2] + 1j * draws[1::2]
    k = np.arange(-n // 2, n // 2)
    coeffs_sorted = (1.0 + k.astype(float) ** 2) ** (-(spec.sigma + 0.5) / 2.0) * ab
    coeffs = np.empty(n, dtype=complex)
    coeffs[k % n] = coeffs_sorted
    f = Field(grid, coeffs)
    if spec.normalize:
        f = (1.0 / sobolev_norm(f, spec.sigma)) * f
    return f


SMOOTH_PRESETS = ("plane_wave", "two_mode", "gaussian_like")


def smooth_preset(grid: FourierGrid, name: str, *params) -> Field:
    """Band-limited profiles.

    ``plane_wave(c, k)``, ``two_mode(c1, k1, c2, k2)`` and ``gaussian_like(width)``;
    the latter is a periodized Gaussian of the given width centred at pi,
    truncated to |k| < N/4 and rejected if its coefficients there exceed 1e-12.
    """
    if name == "plane_wave":
        c, k = params
        return grid.mode(int(k), complex(c))
    if name == "two_mode":
        c1, k1, c2, k2 = params
        return grid.mode(int(k1), complex(c1)) + grid.mode(int(k2), complex(c2))
    if name == "gaussian_like":
        (width,) = params
        width = float(width)
        k = grid.wavenumbers
        coeffs = width / np.sqrt(2 * np.pi) * np.exp(-0.5 * (k * width) ** 2) * (-1.0) ** k
        band = np.abs(k) < grid.n_modes // 4
        edge = width / np.sqrt(2 * np.pi) * np.exp(-0.5 * (grid.n_modes // 4 * width) ** 2)
        if edge >= 1e-12:
            raise ValueError(
                f"gaussian_like width {width} is too narrow for N={grid.n_modes}: "
                f"coefficient at |k|=N/4 is {edge:.2e} >= 1e-12"
            )
        return Field(grid, np.where(band, coeffs, 0.0))
    raise ValueError(f"unknown smooth preset {name!r}; choose from {', '.join(SMOOTH_PRESETS)}")


def plane_wave_exact(grid: FourierGrid, c: complex, k: int, t: float) -> Field:
    """Exact cubic NLS solution ``c exp(i(kx - (k^2 + |c|^2) t))``."""
    if abs(k) > grid.n_modes // 2 - 1:
        raise ValueError(f"|k| = {abs(k)} exceeds N/2 - 1 = {grid.n_modes // 2 - 1}")
    c = complex(c)
    return grid.mode(int(k), c * np.exp(-1j * (k * k + abs(c) ** 2) * t))


def parse_data_spec(text: str):
    """Parse ``rough:sigma:seed[:normalize]`` or ``<preset>:param:...``.

    Returns either a :class:`RoughDataSpec` or a ``(name, params)`` tuple for
    :func:`smooth_preset`.  Amplitudes may be complex (Python syntax, ``1+2j``).
    """
    name, *fields = text.strip().split(":")
    try:
        if name == "rough":
            if len(fields) not in (2, 3):
                raise ValueError("expected rough:sigma:seed[:normalize]")
            normalize = len(fields) == 3 and fields[2].lower() in ("1", "true", "yes", "normalize")
            return RoughDataSpec(float(fields[0]), int(fields[1]), normalize)
        if name == "plane_wave" and len(fields) == 2:
            return name, (complex(fields[0]), int(fields[1]))
        if name == "two_mode" and len(fields) == 4:
            return name, (complex(fields[0]), int(fields[1]), complex(fields[2]), int(fields[3]))
        if name == "gaussian_like" and len(fields) == 1:
            return name, (float(fields[0]),)
    except ValueError as exc:
        raise ValueError(f"bad data spec {text!r}: {exc}") from None
    raise ValueError(
        f"bad data spec {text!r}; use rough:sigma:seed, plane_wave:c:k, "
        "two_mode:c1:k1:c2:k2 or gaussian_like:width"
    )


def make_initial_data(grid: FourierGrid, spec) -> Field:
    """Build a field from a spec string, :class:`RoughDataSpec` or ``(name, params)``."""
    if isinstance(spec, str):
        spec = parse_data_spec(spec)
    if isinstance(spec, RoughDataSpec):
        return rough_field(grid, spec)
    name, params = spec
    return smooth_preset(grid, name, *params)
