import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from resonant.spectral import (
    PHI_SERIES_THRESHOLD,
    Field,
    FourierGrid,
    apply_multiplier,
    free_flow,
    phi1,
    phi2,
    pointwise_power,
    project,
    sobolev_norm,
    to_physical,
    to_spectral,
)

from conftest import EPS, random_field


def dft_direct(samples):
    """O(N^2) forward sum, (1/N) sum_j u_j exp(-i k x_j), returned in FFT order."""
    n = len(samples)
    x = 2 * np.pi * np.arange(n) / n
    k = np.concatenate([np.arange(n // 2), np.arange(-n // 2, 0)])
    return np.array([np.sum(samples * np.exp(-1j * kk * x)) for kk in k]) / n


def synth_direct(grid, coeffs):
    x = grid.points
    return np.array([np.sum(coeffs * np.exp(1j * grid.wavenumbers * xj)) for xj in x])


class TestGrid:
    def test_wavenumbers(self):
        g = FourierGrid(8)
        assert sorted(g.wavenumbers.tolist()) == list(range(-4, 4))
        assert np.allclose(g.points, 2 * np.pi * np.arange(8) / 8)

    @pytest.mark.parametrize("n", [2, 7, 0, -4])
    def test_rejects_bad_sizes(self, n):
        with pytest.raises(ValueError):
            FourierGrid(n)

    def test_index_roundtrip(self):
        g = FourierGrid(16)
        for k in range(-8, 8):
            assert g.wavenumbers[g.index(k)] == k
        with pytest.raises(IndexError):
            g.index(8)


class TestTransforms:
    def test_constant_mode(self, grid32):
        assert np.allclose(to_physical(grid32.mode(0)), 1.0, atol=1e-15)

    def test_single_mode(self, grid32):
        assert np.allclose(to_physical(grid32.mode(1)), np.exp(1j * grid32.points), atol=1e-14)

    def test_constant_samples(self, grid32):
        f = to_spectral(grid32, np.full(32, 2.5 - 1j))
        assert f.coefficient(0) == pytest.approx(2.5 - 1j, abs=1e-15)
        assert np.max(np.abs(np.delete(f.coeffs, 0))) < 1e-15

    def test_cosine(self, grid32):
        f = to_spectral(grid32, np.cos(grid32.points))
        assert f.coefficient(1) == pytest.approx(0.5, abs=1e-15)
        assert f.coefficient(-1) == pytest.approx(0.5, abs=1e-15)
        assert f.l2_norm() == pytest.approx(np.sqrt(0.5), rel=1e-14)

    @pytest.mark.parametrize("n", [4, 16, 32, 48])
    def test_forward_matches_direct_sum(self, n):
        rng = np.random.default_rng(n)
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        got = to_spectral(FourierGrid(n), u).coeffs
        want = dft_direct(u)
        assert np.max(np.abs(got - want)) <= 10 * EPS * np.max(np.abs(want)) * n

    @pytest.mark.parametrize("n", [8, 32])
    def test_inverse_matches_direct_sum(self, n):
        g = FourierGrid(n)
        f = random_field(g, seed=3)
        want = synth_direct(g, f.coeffs)
        assert np.max(np.abs(to_physical(f) - want)) <= 10 * EPS * np.max(np.abs(want)) * n

    @pytest.mark.parametrize("seed", range(5))
    def test_roundtrip(self, seed, grid64):
        f = random_field(grid64, seed)
        back = to_spectral(grid64, to_physical(f))
        assert (back - f).l2_norm() <= 10 * EPS * f.l2_norm()

    def test_length_mismatch_rejected(self, grid32):
        with pytest.raises(ValueError):
            to_spectral(grid32, np.zeros(31))
        with pytest.raises(ValueError):
            Field(grid32, np.zeros(33))

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), logn=st.integers(2, 9))
    def test_parseval(self, seed, logn):
        g = FourierGrid(2**logn)
        f = random_field(g, seed)
        lhs = np.mean(np.abs(to_physical(f)) ** 2)
        rhs = np.sum(np.abs(f.coeffs) ** 2)
        assert lhs == pytest.approx(rhs, rel=10 * EPS)

    def test_field_is_immutable(self, grid32):
        f = grid32.mode(1)
        with pytest.raises(AttributeError):
            f.coeffs = None
        with pytest.raises(ValueError):
            f.coeffs[0] = 1.0


class TestMultipliers:
    def test_identity_and_zero(self, grid32):
        f = random_field(grid32, 1)
        assert np.array_equal(apply_multiplier(f, lambda k: 1.0).coeffs, f.coeffs)
        assert not apply_multiplier(f, lambda k: 0.0).coeffs.any()

    def test_derivative_symbol(self, grid32):
        d = apply_multiplier(grid32.mode(1), lambda k: 1j * k)
        assert np.allclose(d.coeffs, (1j * grid32.mode(1)).coeffs)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**6), a=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
    def test_linearity(self, seed, a):
        g = FourierGrid(32)
        f, h = random_field(g, seed), random_field(g, seed + 1)
        m = lambda k: np.exp(0.3j * k) / (1 + k**2)
        add = apply_multiplier(f + h, m) - (apply_multiplier(f, m) + apply_multiplier(h, m))
        assert add.l2_norm() <= 10 * EPS * (f.l2_norm() + h.l2_norm())
        hom = apply_multiplier(a * f, m) - a * apply_multiplier(f, m)
        assert hom.l2_norm() <= 10 * EPS * abs(a) * f.l2_norm()


class TestFreeFlow:
    def test_constant_invariant(self, grid32):
        c = grid32.mode(0, 2 - 1j)
        assert np.allclose(free_flow(c, 1.234).coeffs, c.coeffs, atol=0)

    def test_period(self, grid32):
        out = free_flow(grid32.mode(1), 2 * np.pi)
        assert out.coefficient(1) == pytest.approx(1.0, abs=1e-14)

    def test_phase(self, grid32):
        out = free_flow(grid32.mode(2), np.pi / 4)
        assert out.coefficient(2) == pytest.approx(-1.0, abs=1e-14)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**6), t=st.floats(-50, 50))
    def test_group_and_isometry(self, seed, t):
        g = FourierGrid(64)
        f = random_field(g, seed)
        assert (free_flow(free_flow(f, t), -t) - f).l2_norm() <= 10 * EPS * f.l2_norm()
        assert free_flow(f, t).l2_norm() == pytest.approx(f.l2_norm(), rel=10 * EPS)


class TestPhi:
    def test_phi1_values(self):
        assert phi1(0) == 1
        assert phi1(1.0) == pytest.approx(np.e - 1, rel=1e-15)
        assert phi1(1j * np.pi) == pytest.approx(2j / np.pi, rel=1e-15)

    def test_phi2_values(self):
        assert phi2(0) == 0.5
        assert phi2(1.0) == pytest.approx(1.0, rel=1e-15)
        assert phi2(1j * np.pi) == pytest.approx(-2 / np.pi**2 + 1j / np.pi, rel=1e-15)

    @pytest.mark.parametrize("phi", [phi1, phi2])
    def test_continuity_at_threshold(self, phi):
        # the series branch (just below) and the direct branch (at the
        # threshold) must agree across the switch
        for angle in np.linspace(0, 2 * np.pi, 33):
            z = PHI_SERIES_THRESHOLD * np.exp(1j * angle)
            assert abs(phi(z * (1 - 1e-15)) - phi(z)) < 1e-12

    def test_vectorized_matches_scalar(self):
        z = np.array([0, 1e-5j, 3e-3 + 1e-3j, 0.5j, 2.0, -40j])
        v1, v2 = phi1(z), phi2(z)
        for i, zi in enumerate(z):
            assert v1[i] == phi1(complex(zi))
            assert v2[i] == phi2(complex(zi))

    def test_phi2_recurrence_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 40
        for z in [1e-4j, 5e-3 + 5e-3j, 0.02j, 0.7 - 0.2j, 25j]:
            zz = mpmath.mpc(z.real, z.imag)
            p1 = (mpmath.exp(zz) - 1) / zz
            p2 = (mpmath.exp(zz) - p1) / zz
            assert abs(phi1(z) - complex(p1)) < 1e-15 * max(1, abs(complex(p1)))
            assert abs(phi2(z) - complex(p2)) < 1e-14 * max(1, abs(complex(p2)))


class TestProjectNormPower:
    def test_project(self, grid32):
        f = grid32.mode(0) + grid32.mode(1) + grid32.mode(3)
        p = project(f, 2)
        assert p.coefficient(0) == 1 and p.coefficient(1) == 1 and p.coefficient(3) == 0
        assert np.array_equal(project(p, 2).coeffs, p.coeffs)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 10**6), K=st.floats(0, 40))
    def test_project_contracts(self, seed, K):
        f = random_field(FourierGrid(64), seed)
        assert project(f, K).l2_norm() <= f.l2_norm()

    def test_sobolev(self, grid32):
        assert sobolev_norm(grid32.zeros(), 3.0) == 0
        assert sobolev_norm(grid32.mode(0, 3.0), -2.7) == pytest.approx(3.0)
        assert sobolev_norm(grid32.mode(1), 1.0) == pytest.approx(np.sqrt(2.0), rel=1e-15)

    def test_pointwise_power(self, grid32):
        c = 1.5 - 0.5j
        out = pointwise_power(grid32.mode(0, c), 2, 1)
        assert out.coefficient(0) == pytest.approx(abs(c) ** 2 * c)
        assert not pointwise_power(grid32.zeros(), 2, 1).coeffs.any()
        m = pointwise_power(grid32.mode(1), 2, 1)
        assert m.coefficient(1) == pytest.approx(1.0)
        assert np.max(np.abs(np.delete(m.coeffs, grid32.index(1)))) < 1e-15

    def test_pointwise_power_rejects(self, grid32):
        with pytest.raises(ValueError):
            pointwise_power(grid32.mode(0), 0, 0)

    def test_dealias_matches_exact_quadratic_convolution(self):
        # for a quadratic product the 2/3 rule is alias free on the kept modes
        g = FourierGrid(24)
        rng = np.random.default_rng(7)
        k = g.wavenumbers
        c = np.where(g.dealias_mask(), rng.standard_normal(24) + 1j * rng.standard_normal(24), 0)
        f = Field(g, c)
        exact = {}
        for a, ca in zip(k, c):
            for b, cb in zip(k, c):
                exact[a + b] = exact.get(a + b, 0) + ca * cb
        clean = pointwise_power(f, 2, 0, dealias=True)
        for kk in k:
            want = exact.get(kk, 0) if abs(kk) < 8 else 0
            assert abs(clean.coefficient(int(kk)) - want) < 1e-13
        # without dealiasing, wavenumber 12 folds onto -12
        plain = pointwise_power(f, 2, 0)
        assert abs(plain.coefficient(-12) - exact[-12] - exact.get(12, 0)) < 1e-13
