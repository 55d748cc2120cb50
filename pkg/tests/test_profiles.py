"""Profile calculus: combinators, tabulated finite differences, domains."""

import numpy as np
import pytest

from masscap import (
    PerturbedProfile,
    RadialMetric,
    SchwarzschildProfile,
    TabulatedProfile,
    adm_mass,
    boundary_geometry,
    scalar_curvature,
)
from masscap.errors import NonPositiveConformalFactor, ProfileDomainError
from masscap.profiles import AffineOfFunction, ProductFunction, fd_weights


class TestFdWeights:
    def test_central_first_derivative(self):
        x = np.arange(-2.0, 3.0)
        w = fd_weights(x, 0.0, 1)
        assert np.allclose(w, [1 / 12, -8 / 12, 0.0, 8 / 12, -1 / 12])

    def test_central_second_derivative(self):
        x = np.arange(-2.0, 3.0)
        w = fd_weights(x, 0.0, 2)
        assert np.allclose(w, np.array([-1, 16, -30, 16, -1]) / 12.0)

    def test_exact_on_polynomials(self):
        # 6-node one-sided stencil must differentiate quartics exactly.
        x = np.arange(6.0)
        w = fd_weights(x, 0.0, 2)
        for p in range(5):
            d2 = w @ (x**p)
            expected = p * (p - 1) * 0.0 ** max(p - 2, 0) if p >= 2 else 0.0
            assert d2 == pytest.approx(expected, abs=1e-9)


class TestCombinators:
    def test_product_derivatives_match_fd(self):
        f = SchwarzschildProfile(3, 2.0)
        g = SchwarzschildProfile(3, -0.5)
        prod = ProductFunction(f, g)
        r, h = 3.0, 1e-5
        d1_fd = (prod.value(r + h) - prod.value(r - h)) / (2 * h)
        d2_fd = (prod.value(r + h) - 2 * prod.value(r) + prod.value(r - h)) / h**2
        assert float(prod.deriv1(r)) == pytest.approx(d1_fd, rel=1e-9)
        assert float(prod.deriv2(r)) == pytest.approx(d2_fd, rel=1e-5)

    def test_product_deviation_is_cancellation_free(self):
        f = SchwarzschildProfile(5, 1.0)
        g = SchwarzschildProfile(5, 2.0)
        prod = ProductFunction(f, g)
        r = 1e6
        # direct value-1 would be pure roundoff at this radius
        expected = 1.5 / r**3 + 0.5 / r**6
        assert float(prod.deviation(r)) == pytest.approx(expected, rel=1e-14)

    def test_affine_deviation(self):
        f = SchwarzschildProfile(3, 2.0)
        aff = AffineOfFunction(1.0, -0.25, f)
        r = 1e8
        assert float(aff.deviation(r)) == pytest.approx(-0.25 * (1.0 + 1.0 / r), rel=1e-12)


class TestPerturbedProfile:
    def test_derivatives_match_fd(self):
        p = PerturbedProfile(4, 1.5, 0.2, 2.0)
        r, h = 2.5, 1e-5
        d1_fd = (p.value(r + h) - p.value(r - h)) / (2 * h)
        d2_fd = (p.value(r + h) - 2 * p.value(r) + p.value(r - h)) / h**2
        assert float(p.deriv1(r)) == pytest.approx(d1_fd, rel=1e-8)
        assert float(p.deriv2(r)) == pytest.approx(d2_fd, rel=1e-4)

    def test_superharmonic_gives_nonnegative_curvature(self, perturbed_metrics):
        for M in perturbed_metrics:
            radii = np.geomspace(M.r0, 1e4 * M.r0, 200)
            assert np.min(scalar_curvature(M, radii)) >= -1e-12

    def test_exact_adm_mass(self):
        p = PerturbedProfile(3, 1.0, 0.1, 1.0)
        M = RadialMetric(3, 1.0, p)
        assert adm_mass(M) == pytest.approx(p.adm_mass_exact, rel=1e-10)

    def test_rejects_negative_amplitude(self):
        with pytest.raises(ValueError):
            PerturbedProfile(3, 1.0, -0.1, 1.0)


class TestTabulatedProfile:
    def setup_method(self):
        self.exact = SchwarzschildProfile(3, 2.0)
        self.tab = TabulatedProfile.sample(self.exact, 2.0, 2e5, 600)

    def test_values_and_derivatives_near_boundary(self):
        for r in (2.0, 2.7, 11.0, 300.0):
            assert float(self.tab.value(r)) == pytest.approx(
                float(self.exact.value(r)), rel=1e-10
            )
            assert float(self.tab.deriv1(r)) == pytest.approx(
                float(self.exact.deriv1(r)), rel=1e-6
            )
            assert float(self.tab.deriv2(r)) == pytest.approx(
                float(self.exact.deriv2(r)), rel=1e-4
            )

    def test_tail_extension(self):
        r = 1e7  # beyond the grid: matched asymptotic tail
        assert float(self.tab.value(r)) == pytest.approx(
            float(self.exact.value(r)), rel=1e-12
        )
        assert float(self.tab.deriv1(r)) == pytest.approx(
            float(self.exact.deriv1(r)), rel=1e-4
        )

    def test_geometry_matches_closed_forms(self):
        M = RadialMetric(3, 2.0, self.tab)
        B = boundary_geometry(M)
        assert B.induced_radius == pytest.approx(4.5, rel=1e-9)
        assert B.mean_curvature == pytest.approx(0.14814814814814814, rel=1e-7)
        assert adm_mass(M) == pytest.approx(2.0, rel=1e-8)

    def test_below_grid_raises(self):
        with pytest.raises(ProfileDomainError):
            self.tab.value(1.0)

    def test_log_uniform_grid_required(self):
        radii = np.linspace(1.0, 10.0, 50)
        with pytest.raises(ValueError, match="log-uniform"):
            TabulatedProfile(3, radii, np.ones(50))

    def test_positive_values_required(self):
        radii = np.geomspace(1.0, 100.0, 32)
        values = np.ones(32)
        values[5] = -0.1
        with pytest.raises(NonPositiveConformalFactor):
            TabulatedProfile(3, radii, values)
