"""Metric-level operations: sphere volumes, boundary geometry, ADM mass,
scalar curvature."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from masscap import (
    NonPositiveConformalFactor,
    RadialMetric,
    SchwarzschildProfile,
    SlowDecay,
    adm_mass,
    boundary_geometry,
    round_sphere_boundary,
    scalar_curvature,
    sphere_volume,
)
from masscap.profiles import ConformalProfile

from conftest import log_radii, rel_err


def sphere_volume_oracle(n):
    """Independent recursion: omega_(k) = omega_(k-1) * int sin^(k-1)."""
    omega = 2.0  # 0-sphere (two points)
    for k in range(2, n + 1):
        factor, _ = quad(lambda t, p=k - 2: np.sin(t) ** p, 0.0, np.pi)
        omega *= factor
    return omega


class TestSphereVolume:
    def test_two_sphere(self):
        assert sphere_volume(3) == pytest.approx(4.0 * np.pi, rel=1e-15)

    def test_circle(self):
        assert sphere_volume(2) == pytest.approx(2.0 * np.pi, rel=1e-15)

    def test_three_sphere_against_quadrature_oracle(self):
        oracle = sphere_volume_oracle(4)
        assert oracle == pytest.approx(2.0 * np.pi**2, rel=1e-10)
        assert sphere_volume(4) == pytest.approx(oracle, rel=1e-10)

    @pytest.mark.parametrize("n", range(2, 12))
    def test_matches_recursion_generally(self, n):
        assert sphere_volume(n) == pytest.approx(sphere_volume_oracle(n), rel=1e-10)

    def test_rejects_low_dimension(self):
        with pytest.raises(ValueError):
            sphere_volume(1)


class TestBoundaryGeometry:
    def test_schwarzschild_n3(self):
        M = RadialMetric(3, 2.0, SchwarzschildProfile(3, 2.0))
        B = boundary_geometry(M)
        assert B.induced_radius == pytest.approx(4.5, abs=1e-14)
        assert B.scalar_curvature == pytest.approx(2.0 / 4.5**2, rel=1e-14)
        assert B.mean_curvature == pytest.approx(
            (2.0 / 2.0) * (1.0 - 0.5) * 1.5**-3, rel=1e-12
        )
        assert B.mean_curvature == pytest.approx(0.14814814814814814, rel=1e-12)

    @pytest.mark.parametrize("n", (3, 4, 5, 7))
    def test_euclidean_unit_sphere(self, n):
        M = RadialMetric(n, 1.0, SchwarzschildProfile(n, 0.0))
        B = boundary_geometry(M)
        assert B.induced_radius == pytest.approx(1.0, abs=1e-15)
        assert B.mean_curvature == pytest.approx(n - 1.0, rel=1e-15)
        assert B.scalar_curvature == pytest.approx((n - 1.0) * (n - 2.0), rel=1e-15)

    def test_schwarzschild_n4(self):
        # rho = r0 (1+x)^(2/(n-2)) with exponent 1 at n=4 gives 2.5
        # (cross-checked: the induced metric is 1.25^2 * r0^2 * dOmega^2).
        M = RadialMetric(4, 2.0, SchwarzschildProfile(4, 2.0))
        B = boundary_geometry(M)
        assert B.induced_radius == pytest.approx(2.0 * 1.25, rel=1e-14)
        assert B.mean_curvature == pytest.approx(1.5 * 0.75 * 1.25**-2.0, rel=1e-13)
        assert B.mean_curvature == pytest.approx(0.72, rel=1e-13)

    def test_round_sphere_identity(self, schwarzschild_grid):
        # area * S = omega * (n-1)(n-2) * rho^(n-3)
        for data in schwarzschild_grid:
            B = boundary_geometry(data.metric())
            lhs = B.area * B.scalar_curvature
            rhs = (
                sphere_volume(data.n)
                * (data.n - 1)
                * (data.n - 2)
                * B.induced_radius ** (data.n - 3)
            )
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_umbilic_with_zero_tracefree_norm(self, schwarzschild_grid):
        for data in schwarzschild_grid:
            B = boundary_geometry(data.metric())
            assert B.umbilic
            assert B.tracefree_norm == 0.0

    @given(
        n=st.sampled_from((3, 4, 5, 6, 7)),
        rho=st.floats(0.1, 100.0),
    )
    @settings(max_examples=100, deadline=None)
    def test_round_sphere_identity_property(self, n, rho):
        B = round_sphere_boundary(n, rho, 1.0)
        lhs = B.area * B.scalar_curvature
        rhs = sphere_volume(n) * (n - 1) * (n - 2) * rho ** (n - 3)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_mean_curvature_sign_convention(self):
        # Euclidean spheres bounding the end are outward-convex: H > 0.
        for n in (3, 4, 5, 7):
            for r0 in (0.5, 1.0, 3.0):
                M = RadialMetric(n, r0, SchwarzschildProfile(n, 0.0))
                H = boundary_geometry(M).mean_curvature
                assert H == pytest.approx((n - 1) / r0, rel=1e-14)
                assert H > 0.0

    def test_negative_mass_allowed_above_singular_radius(self):
        # x = -1/2: rho = (1+x)^(2/(n-2)) = 0.25 at n=3, H = 2*1.5*8 = 24
        M = RadialMetric(3, 1.0, SchwarzschildProfile(3, -1.0))
        B = boundary_geometry(M)
        assert B.induced_radius == pytest.approx(0.25, abs=1e-15)
        assert B.mean_curvature == pytest.approx(2.0 * 1.5 * 0.5**-3.0, rel=1e-13)

    def test_negative_mass_rejected_inside_singular_radius(self):
        with pytest.raises(ValueError, match="singular"):
            RadialMetric(3, 0.4, SchwarzschildProfile(3, -1.0))


class TestSymbolicDerivation:
    """The radial mean-curvature formula is not in closed-form sources;
    its derivation is pinned by symbolic reduction to the Schwarzschild
    special case."""

    @pytest.mark.parametrize("n", (3, 4, 5, 7))
    def test_mean_curvature_reduces_to_schwarzschild_form(self, n):
        sp = pytest.importorskip("sympy")
        r, m, r0 = sp.symbols("r m r0", positive=True)
        u = 1 + m / (2 * r ** (n - 2))
        general = u ** sp.Rational(-n, n - 2) * (
            (n - 1) * u / r + sp.Rational(2 * (n - 1), n - 2) * sp.diff(u, r)
        )
        x = m / (2 * r0 ** (n - 2))
        closed = (n - 1) / r0 * (1 - x) * (1 + x) ** sp.Rational(-n, n - 2)
        assert sp.simplify(general.subs(r, r0) - closed) == 0


class _SlowProfile(ConformalProfile):
    """Decay r^-0.6: admissible order but no r^-(n-2) coefficient (n=3)."""

    def __init__(self):
        super().__init__(3)

    def value(self, r):
        return 1.0 + np.asarray(r, dtype=float) ** -0.6

    def deviation(self, r):
        return np.asarray(r, dtype=float) ** -0.6

    def deriv1(self, r):
        return -0.6 * np.asarray(r, dtype=float) ** -1.6

    def deriv2(self, r):
        return 0.96 * np.asarray(r, dtype=float) ** -2.6


class _TwoTermProfile(ConformalProfile):
    """u = 1 + 1/(2r) + 1/r^2 in n=3: mass exactly 1."""

    def __init__(self):
        super().__init__(3)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        return 1.0 + 0.5 / r + r**-2.0

    def deviation(self, r):
        r = np.asarray(r, dtype=float)
        return 0.5 / r + r**-2.0

    def deriv1(self, r):
        r = np.asarray(r, dtype=float)
        return -0.5 / r**2 - 2.0 / r**3

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        return 1.0 / r**3 + 6.0 / r**4


class TestAdmMass:
    @pytest.mark.parametrize("n", (3, 4, 5, 7))
    @pytest.mark.parametrize("m", (-0.5, 0.0, 0.5, 1.0, 2.0))
    def test_schwarzschild_mass_exact(self, n, m):
        r0 = 2.0
        M = RadialMetric(n, r0, SchwarzschildProfile(n, m))
        assert rel_err(adm_mass(M), m) <= 1e-8

    def test_euclidean_zero(self):
        M = RadialMetric(5, 1.0, SchwarzschildProfile(5, 0.0))
        assert adm_mass(M) == pytest.approx(0.0, abs=1e-15)

    def test_two_term_profile(self):
        # Independent symbolic limit: 2r(u-1) = 1 + 4/r -> 1.
        M = RadialMetric(3, 1.0, _TwoTermProfile())
        assert adm_mass(M) == pytest.approx(1.0, rel=1e-12)

    def test_slow_decay_raises(self):
        M = RadialMetric(3, 1.0, _SlowProfile())
        with pytest.raises(SlowDecay):
            adm_mass(M)


class TestScalarCurvature:
    def test_schwarzschild_scalar_flat(self, schwarzschild_grid):
        for data in schwarzschild_grid:
            M = data.metric()
            radii = log_radii(data.r0)
            assert np.max(np.abs(scalar_curvature(M, radii))) < 1e-13

    def test_flat_space(self):
        M = RadialMetric(4, 1.0, SchwarzschildProfile(4, 0.0))
        assert scalar_curvature(M, 2.5) == 0.0

    def test_exponential_profile_against_fd_laplacian(self):
        # n=3, u = 1 + exp(-r): R = -(8/u^5) * (u'' + 2u'/r), with the
        # Laplacian checked by central finite differences.
        class ExpProfile(ConformalProfile):
            def __init__(self):
                super().__init__(3)

            def value(self, r):
                return 1.0 + np.exp(-np.asarray(r, dtype=float))

            def deriv1(self, r):
                return -np.exp(-np.asarray(r, dtype=float))

            def deriv2(self, r):
                return np.exp(-np.asarray(r, dtype=float))

        prof = ExpProfile()
        M = RadialMetric(3, 0.5, prof)
        r = 1.0
        h = 1e-5
        u = float(prof.value(r))
        fd_lap = (
            float(prof.value(r + h)) - 2.0 * u + float(prof.value(r - h))
        ) / h**2 + 2.0 * (float(prof.value(r + h)) - float(prof.value(r - h))) / (
            2.0 * h * r
        )
        symbolic_lap = np.exp(-1.0) - 2.0 * np.exp(-1.0) / r
        assert fd_lap == pytest.approx(symbolic_lap, rel=1e-5)
        expected = -8.0 / u**5 * symbolic_lap
        assert scalar_curvature(M, r) == pytest.approx(expected, rel=1e-12)

    def test_positive_profile_required(self):
        class BadProfile(SchwarzschildProfile):
            def value(self, r):
                return np.asarray(r, dtype=float) * 0.0 - 1.0

        with pytest.raises(NonPositiveConformalFactor):
            RadialMetric(3, 1.0, BadProfile(3, 0.0))
