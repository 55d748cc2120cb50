"""Boundary capacity of radial metrics by two independent routes.

Route 1 (quadrature): radial harmonic functions of g = u^(4/(n-2)) delta
satisfy (r^(n-1) u^2 Phi')' = 0, so the capacity potential is an exact
radial integral

    Phi(r) = I(r)/I(r0),   I(r) = int_r^inf ds / (s^(n-1) u(s)^2),

and the capacity is 1/((n-2) I(r0)).

Route 2 (variational): minimize the discretized Dirichlet energy over
radial test functions on a log grid with the boundary value at R_max
matched to the capacity tail by fixed-point sweeps.  The two routes
share only the profile, never intermediate results.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.linalg import solve_banded

from .errors import DivergentIntegral, NonConvergence
from .geometry import RadialMetric, power_coefficient_limit, sphere_volume
from .profiles import RadialFunction

__all__ = [
    "CapacityMethod",
    "CapacitySolution",
    "GridSpec",
    "capacity_quadrature",
    "capacity_variational",
    "capacity_from_expansion",
]

#: Split radius between direct and substituted tail quadrature, in r0 units.
QUAD_SPLIT_FACTOR = 1.0e4


class CapacityMethod(enum.Enum):
    QUADRATURE = "quadrature"
    VARIATIONAL = "variational"


@dataclass(frozen=True)
class GridSpec:
    """Discretization of [r0, R_max] for the variational solve."""

    points: int = 4000
    r_max_factor: float = 1.0e4
    fixed_point_sweeps: int = 2

    def __post_init__(self):
        if self.points < 8:
            raise ValueError("need at least 8 grid points")
        if self.r_max_factor <= 1.0:
            raise ValueError("r_max_factor must exceed 1")


@dataclass(frozen=True)
class CapacitySolution:
    """Capacity potential profile plus derived scalars.

    ``normal_derivative`` is dPhi/dnu at r0 with respect to the g-unit
    normal pointing into the manifold (outward in r); ``flux`` is the
    conserved radial quantity -r^(n-1) u^2 Phi'.
    """

    n: int
    r0: float
    phi: RadialFunction
    normal_derivative: float
    capacity: float
    energy: float
    flux: float
    method: CapacityMethod

    def flux_capacity(self, boundary_area: float) -> float:
        """Capacity recomputed from the boundary flux integral
        -(1/((n-2) omega)) * dPhi/dnu * area."""
        omega = sphere_volume(self.n)
        return -self.normal_derivative * boundary_area / ((self.n - 2) * omega)


def _checked_quad(f, a, b, what: str) -> float:
    res = quad(f, a, b, epsabs=1e-300, epsrel=1e-12, limit=200, full_output=1)
    val, err = res[0], res[1]
    if len(res) > 3 or not np.isfinite(val):
        raise DivergentIntegral(f"{what}: quadrature failed ({res[-1]!s})")
    if err > max(1e-9 * abs(val), 1e-250):
        raise DivergentIntegral(
            f"{what}: quadrature error {err:g} too large for value {val:g}"
        )
    return val


class _RadialIntegrals:
    """I(r) = int_r^inf ds/(s^(n-1) u^2), split at r_cut.

    The body integral runs in t = log r; the tail substitutes
    s = r^-(n-2), in which the integrand u^-2 is smooth up to s = 0.
    """

    def __init__(self, metric: RadialMetric, r_cut_factor: float = QUAD_SPLIT_FACTOR):
        self.metric = metric
        self.n = metric.n
        self.r_cut = r_cut_factor * metric.r0
        self._tail_cache: dict[float, float] = {}

    def tail(self, r: float) -> float:
        """Integral from r to infinity (use for r at or beyond r_cut)."""
        cached = self._tail_cache.get(r)
        if cached is not None:
            return cached
        n = self.n
        u = self.metric.profile.value
        s_hi = r ** (2.0 - n)

        def integrand(s):
            radius = s ** (-1.0 / (n - 2))
            return 1.0 / float(u(radius)) ** 2

        val = _checked_quad(integrand, 0.0, s_hi, "capacity tail") / (n - 2)
        self._tail_cache[r] = val
        return val

    def body(self, a: float, b: float) -> float:
        """Integral between finite radii a <= b."""
        n = self.n
        u = self.metric.profile.value

        def integrand(t):
            radius = np.exp(t)
            return radius ** (2.0 - n) / float(u(radius)) ** 2

        return _checked_quad(integrand, np.log(a), np.log(b), "capacity body")

    def outward(self, r: float) -> float:
        if r >= self.r_cut:
            return self.tail(r)
        return self.body(r, self.r_cut) + self.tail(self.r_cut)


class QuadraturePotential(RadialFunction):
    """Phi from the radial reduction, with exact derivative identities.

    Phi'  = -kappa / (r^(n-1) u^2)  with kappa = 1/I(r0),
    Phi'' = -Phi' * ((n-1)/r + 2 u'/u).
    """

    def __init__(self, integrals: _RadialIntegrals, kappa: float):
        self._integrals = integrals
        self._kappa = kappa
        self.n = integrals.n

    def value(self, r):
        if np.ndim(r) == 0:
            return self._kappa * self._integrals.outward(float(r))
        return np.array([self._kappa * self._integrals.outward(float(ri)) for ri in r])

    def deriv1(self, r):
        r = np.asarray(r, dtype=float)
        u = np.asarray(self._integrals.metric.profile.value(r), dtype=float)
        out = -self._kappa / (r ** (self.n - 1) * u**2)
        return out if out.ndim else float(out)

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        prof = self._integrals.metric.profile
        u = np.asarray(prof.value(r), dtype=float)
        du = np.asarray(prof.deriv1(r), dtype=float)
        out = -self.deriv1(r) * ((self.n - 1) / r + 2.0 * du / u)
        return out if out.ndim else float(out)


def _g_normal_derivative(metric: RadialMetric, coordinate_derivative: float) -> float:
    """Convert d/dr at r0 to the g-unit normal derivative."""
    u0 = float(metric.profile.value(metric.r0))
    return coordinate_derivative * u0 ** (-2.0 / (metric.n - 2))


def capacity_quadrature(
    metric: RadialMetric, r_cut_factor: float = QUAD_SPLIT_FACTOR
) -> CapacitySolution:
    """Capacity by exact radial quadrature (the high-accuracy route)."""
    n, r0 = metric.n, metric.r0
    integrals = _RadialIntegrals(metric, r_cut_factor)
    I0 = integrals.outward(r0)
    if I0 <= 0.0 or not np.isfinite(I0):
        raise DivergentIntegral(f"I(r0) = {I0:g} is not a positive finite number")
    kappa = 1.0 / I0
    capacity = kappa / (n - 2)
    u0 = float(metric.profile.value(r0))
    dphi_dr = -kappa / (r0 ** (n - 1) * u0**2)
    return CapacitySolution(
        n=n,
        r0=r0,
        phi=QuadraturePotential(integrals, kappa),
        normal_derivative=_g_normal_derivative(metric, dphi_dr),
        capacity=capacity,
        energy=sphere_volume(n) * kappa,
        flux=kappa,
        method=CapacityMethod.QUADRATURE,
    )


class SampledPotential(RadialFunction):
    """Variational minimizer: grid samples with a matched power tail."""

    def __init__(self, metric: RadialMetric, t_grid, samples, tail_value: float):
        self.metric = metric
        self.n = metric.n
        self._t = t_grid
        self._f = samples
        self.r_max = float(np.exp(t_grid[-1]))
        self._tail = tail_value

    def value(self, r):
        r = np.asarray(r, dtype=float)
        body = np.interp(np.log(np.maximum(r, 1e-300)), self._t, self._f)
        tail = self._tail * (self.r_max / r) ** (self.n - 2)
        out = np.where(r > self.r_max, tail, body)
        return out if out.ndim else float(out)


def capacity_variational(metric: RadialMetric, grid: GridSpec | None = None) -> CapacitySolution:
    """Capacity by discrete Dirichlet-energy minimization.

    The quadratic form sum_i A_(i+1/2) (f_(i+1)-f_i)^2 / h with
    A = r^(n-2) u^2 (log-radius variable) is minimized subject to
    f(r0) = 1 and f(R_max) = phi_R; phi_R is matched to the capacity
    tail C / R_max^(n-2) by fixed-point sweeps.  The reported energy
    adds the analytic tail contribution beyond R_max.
    """
    if grid is None:
        grid = GridSpec()
    n, r0 = metric.n, metric.r0
    npts = grid.points
    r_max = grid.r_max_factor * r0

    t = np.linspace(np.log(r0), np.log(r_max), npts)
    h = t[1] - t[0]
    t_mid = 0.5 * (t[:-1] + t[1:])
    r_mid = np.exp(t_mid)
    u_mid = np.asarray(metric.profile.value(r_mid), dtype=float)
    A = r_mid ** (n - 2) * u_mid**2

    # Tridiagonal stiffness for the interior unknowns f_1 .. f_(npts-2):
    # A_(i-1/2) f_(i-1) - (A_(i-1/2)+A_(i+1/2)) f_i + A_(i+1/2) f_(i+1) = 0.
    band = np.zeros((3, npts - 2))
    band[0, 1:] = A[1:-1]
    band[1, :] = -(A[:-1] + A[1:])
    band[2, :-1] = A[1:-1]

    def solve(phi_right: float):
        rhs = np.zeros(npts - 2)
        rhs[0] = -A[0] * 1.0
        rhs[-1] -= A[-1] * phi_right
        interior = solve_banded((1, 1), band, rhs)
        f = np.empty(npts)
        f[0] = 1.0
        f[-1] = phi_right
        f[1:-1] = interior
        return f

    phi_right = 0.0
    capacities = []
    f = None
    kappa = None
    for _ in range(grid.fixed_point_sweeps + 1):
        f = solve(phi_right)
        flux = -A * np.diff(f) / h
        kappa = float(np.mean(flux))
        if kappa <= 0.0 or not np.isfinite(kappa):
            raise NonConvergence(f"discrete flux kappa = {kappa!r} is not positive")
        drift = float(np.max(np.abs(flux - kappa)))
        if drift > 1e-8 * kappa:
            raise NonConvergence(
                f"discrete flux varies by {drift:g} (kappa = {kappa:g}): "
                "linear solve did not reach tolerance"
            )
        capacities.append(kappa / (n - 2))
        phi_right = capacities[-1] * r_max ** (2.0 - n)

    if len(capacities) >= 2 and abs(capacities[-1] - capacities[-2]) > 1e-6 * abs(
        capacities[-1]
    ):
        raise NonConvergence("fixed-point tail matching did not settle")

    omega = sphere_volume(n)
    interior_energy = float(np.sum(A * np.diff(f) ** 2 / h))
    energy = omega * (interior_energy + kappa * phi_right)
    capacity = energy / ((n - 2) * omega)
    u0 = float(metric.profile.value(r0))
    dphi_dr = -kappa / (r0 ** (n - 1) * u0**2)
    return CapacitySolution(
        n=n,
        r0=r0,
        phi=SampledPotential(metric, t, f, phi_right),
        normal_derivative=_g_normal_derivative(metric, dphi_dr),
        capacity=capacity,
        energy=energy,
        flux=kappa,
        method=CapacityMethod.VARIATIONAL,
    )


def capacity_from_expansion(
    sol: CapacitySolution, n: int, base_radius: float | None = None, rtol: float = 1e-7
) -> float:
    """Capacity re-extracted from the far-field expansion Phi ~ C r^-(n-2).

    Extrapolates r^(n-2) Phi(r) at geometrically spaced radii; for the
    variational solution the sampling stays inside the solved domain.
    """
    if base_radius is None:
        base_radius = 1.0e3 * sol.r0
        r_max = getattr(sol.phi, "r_max", None)
        if r_max is not None:
            base_radius = min(base_radius, r_max / 16.0)
    return power_coefficient_limit(
        lambda r: r ** (n - 2) * float(sol.phi.value(r)),
        n,
        base_radius=base_radius,
        rtol=rtol,
        what="capacity from expansion",
    )
