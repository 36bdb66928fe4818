"""Independent references for the oscillatory structure of cubic NLS.

These routines deliberately avoid the precomputed steppers in
:mod:`resonant.schemes`; they rebuild each object from the free flow, the
Fourier-sum definition or numerical quadrature so they can be used to check
the schemes.
"""

from __future__ import annotations

import numpy as np

from .spectral import (
    Field,
    apply_multiplier,
    free_flow,
    phi1,
    phi2,
    to_physical,
    to_spectral,
)


def resonance_factor(k1: int, k2: int, k3: int) -> int:
    """Phase ``k^2 - k1^2 + k2^2 - k3^2`` of the cubic interaction, ``k = k1 - k2 + k3``.

    Evaluated in the factored form ``2 k2^2 - 2 (k1 + k3) k2 + 2 k1 k3``.
    """
    r = 2 * k2 * k2 - 2 * (k1 + k3) * k2 + 2 * k1 * k3
    k = k1 - k2 + k3
    assert r == k * k - k1 * k1 + k2 * k2 - k3 * k3
    return r


def _cubic(v: Field) -> Field:
    w = to_physical(v)
    return to_spectral(v.grid, np.abs(w) ** 2 * w)


def osc(s: float, u0: Field) -> Field:
    """Leading oscillation ``e^{-is Lap}(|e^{is Lap} u0|^2 e^{is Lap} u0)``."""
    return free_flow(_cubic(free_flow(u0, s)), -s)


def osc_triple_sum(s: float, u0: Field) -> Field:
    """``osc`` by direct O(N^3) summation over interacting triples.

    ``sum_{k1 - k2 + k3 = k} u_k1 conj(u_k2) u_k3 exp(i s R(k1, k2, k3))``.
    Output wavenumbers outside the grid are folded back modulo N exactly as
    the collocation product does; for those the outer phase uses the folded
    wavenumber.  Intended for N <= 32.
    """
    grid = u0.grid
    n = grid.n_modes
    ks, coeffs = u0.coefficients_by_wavenumber()
    out = np.zeros(n, dtype=complex)
    for i1, k1 in enumerate(ks):
        a = coeffs[i1]
        if a == 0:
            continue
        for i2, k2 in enumerate(ks):
            b = np.conj(coeffs[i2])
            if b == 0:
                continue
            for i3, k3 in enumerate(ks):
                c = coeffs[i3]
                k1i, k2i, k3i = int(k1), int(k2), int(k3)
                k = k1i - k2i + k3i
                folded = (k - grid.k_min) % n + grid.k_min
                phase = resonance_factor(k1i, k2i, k3i) + folded * folded - k * k
                out[folded % n] += a * b * c * np.exp(1j * s * phase)
    return Field(grid, out)


def osc_integral_quadrature(t: float, u0: Field, panels: int = 16) -> Field:
    """``int_0^t osc(s, u0) ds`` by composite 4-point Gauss-Legendre quadrature."""
    if panels < 1:
        raise ValueError(f"panels must be >= 1, got {panels}")
    nodes, weights = np.polynomial.legendre.leggauss(4)
    h = t / panels
    total = np.zeros(u0.grid.n_modes, dtype=complex)
    for p in range(panels):
        mid = (p + 0.5) * h
        for x, w in zip(nodes, weights):
            total += 0.5 * h * w * osc(mid + 0.5 * h * x, u0).coeffs
    return Field(u0.grid, total)


def _conj_field(f: Field) -> Field:
    return to_spectral(f.grid, np.conj(to_physical(f)))


def _phi_on_conj(f: Field, phi, t: float) -> Field:
    """``phi(-2 i t Lap)`` applied to ``conj(f)``."""
    return apply_multiplier(_conj_field(f), lambda k: phi(2j * t * np.asarray(k, float) ** 2))


def resonance_integral_order1(t: float, u0: Field) -> Field:
    """First-order resonance-based approximation ``t u0^2 phi1(-2it Lap) conj(u0)``."""
    u = to_physical(u0)
    w = to_physical(_phi_on_conj(u0, phi1, t))
    return to_spectral(u0.grid, t * u * u * w)


def resonance_integral_order2(t: float, u0: Field) -> Field:
    """Second-order resonance-based approximation of ``int_0^t osc(s, u0) ds``.

    ``t u0^2 (phi1 - phi2)(-2it Lap) conj(u0)
    + t e^{-it Lap}[(e^{it Lap} u0)^2 phi2(-2it Lap) e^{it Lap} conj(u0)]``.
    """
    grid = u0.grid
    u = to_physical(u0)
    a = to_physical(_phi_on_conj(u0, lambda z: phi1(z) - phi2(z), t))
    first = to_spectral(grid, t * u * u * a)
    v = to_physical(free_flow(u0, t))
    ubar_flowed = free_flow(_conj_field(u0), t)
    b = to_physical(apply_multiplier(ubar_flowed, lambda k: phi2(2j * t * np.asarray(k, float) ** 2)))
    second = free_flow(to_spectral(grid, t * v * v * b), -t)
    return first + second


def lie_commutator(u: Field) -> Field:
    """Half Lie commutator of kinetic and nonlinear vector fields.

    ``(u' conj(u')) u + (u' conj(u)) u' + (u conj(u')) u' + (u conj(u'')) u``
    with derivatives taken spectrally.
    """
    grid = u.grid
    v = to_physical(u)
    dv = to_physical(apply_multiplier(u, lambda k: 1j * np.asarray(k, float)))
    d2v = to_physical(apply_multiplier(u, lambda k: -np.asarray(k, float) ** 2))
    cv, cdv, cd2v = np.conj(v), np.conj(dv), np.conj(d2v)
    out = (dv * cdv) * v + (dv * cv) * dv + (v * cdv) * dv + (v * cd2v) * v
    return to_spectral(grid, out)


def reference_flow(u: Field, tau: float, substeps: int = 256) -> Field:
    """Accurate one-step cubic NLS flow: ``substeps`` Strang substeps, Richardson-extrapolated."""
    from .schemes import StepperConfig, evolve

    coarse = evolve("strang", None, u, StepperConfig(tau / substeps), substeps)
    fine = evolve("strang", None, u, StepperConfig(tau / (2 * substeps)), 2 * substeps)
    return fine + (1.0 / 3.0) * (fine - coarse)
