"""Radial conformally flat metrics: curvature, boundary geometry, ADM mass.

A metric here is g = u(r)^(4/(n-2)) * delta on {r >= r0} in R^n with a
rotationally symmetric conformal factor u.  The inner boundary is the
coordinate sphere r = r0.  Mean curvature is signed so that Euclidean
coordinate spheres (seen from the unbounded side) have H > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gamma

from .errors import NonPositiveConformalFactor, SlowDecay
from .profiles import ConformalProfile, RadialFunction, SchwarzschildProfile

__all__ = [
    "sphere_volume",
    "RadialMetric",
    "BoundaryGeometry",
    "round_sphere_boundary",
    "boundary_geometry",
    "adm_mass",
    "scalar_curvature",
    "power_coefficient_limit",
]

#: Default extraction radius for asymptotic coefficients, in units of r0.
ADM_RADIUS_FACTOR = 1.0e3

#: Relative stabilization tolerance for coefficient extraction.
ADM_RTOL = 1.0e-8


def sphere_volume(n: int) -> float:
    """Volume of the unit (n-1)-sphere in R^n: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 2:
        raise ValueError("need n >= 2 (sphere dimension n-1 >= 1)")
    return float(2.0 * np.pi ** (n / 2.0) / gamma(n / 2.0))


@dataclass(frozen=True)
class RadialMetric:
    """Conformally flat rotationally symmetric metric with inner boundary.

    ``spin`` is metadata recording which rigidity theorem applies; it is
    never enforced geometrically.
    """

    n: int
    r0: float
    profile: ConformalProfile
    spin: bool = True

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"dimension n={self.n} must be >= 3")
        if self.profile.n != self.n:
            raise ValueError("profile dimension does not match metric dimension")
        if self.r0 <= 0.0:
            raise ValueError("boundary radius r0 must be positive")
        if isinstance(self.profile, SchwarzschildProfile) and self.profile.m < 0.0:
            r_star = (abs(self.profile.m) / 2.0) ** (1.0 / (self.n - 2))
            if self.r0 <= r_star:
                raise ValueError(
                    f"r0={self.r0:g} must exceed the singular radius {r_star:g} for m<0"
                )
        self.profile.check_positive(self.r0)


@dataclass(frozen=True)
class BoundaryGeometry:
    """Induced geometry of the inner boundary sphere.

    Every coordinate sphere of a radial metric is a round sphere, hence
    umbilic with vanishing trace-free second fundamental form.
    """

    n: int
    induced_radius: float
    area: float
    scalar_curvature: float
    mean_curvature: float
    umbilic: bool = True
    tracefree_norm: float = 0.0


def round_sphere_boundary(n: int, rho: float, mean_curvature: float) -> BoundaryGeometry:
    """Boundary data for a round sphere of induced radius rho carrying an
    arbitrary ambient mean curvature (used for hypothesis sweeps)."""
    if rho <= 0.0:
        raise ValueError("induced radius must be positive")
    return BoundaryGeometry(
        n=n,
        induced_radius=rho,
        area=sphere_volume(n) * rho ** (n - 1),
        scalar_curvature=(n - 1) * (n - 2) / rho**2,
        mean_curvature=float(mean_curvature),
    )


def boundary_geometry(metric: RadialMetric) -> BoundaryGeometry:
    """Induced radius, area, scalar and mean curvature of {r = r0}.

    rho = r0 * u^(2/(n-2)) and the round sphere then fixes the area and
    its intrinsic scalar curvature.  The mean curvature of a coordinate
    sphere is

        H(r) = u^(-n/(n-2)) * [ (n-1)/r * u + (2(n-1)/(n-2)) * u' ]

    which for the Schwarzschild factor reduces to the familiar
    (n-1)/r0 * (1-x) * (1+x)^(-n/(n-2)) with x = m/(2 r0^(n-2)).
    """
    n, r0 = metric.n, metric.r0
    u0 = float(metric.profile.value(r0))
    if u0 <= 0.0:
        raise NonPositiveConformalFactor(f"u(r0) = {u0:g} <= 0")
    du0 = float(metric.profile.deriv1(r0))
    rho = r0 * u0 ** (2.0 / (n - 2))
    H = u0 ** (-n / (n - 2.0)) * ((n - 1) * u0 / r0 + (2.0 * (n - 1) / (n - 2)) * du0)
    return BoundaryGeometry(
        n=n,
        induced_radius=rho,
        area=sphere_volume(n) * rho ** (n - 1),
        scalar_curvature=(n - 1) * (n - 2) / rho**2,
        mean_curvature=H,
    )


def scalar_curvature(metric: RadialMetric, r):
    """Pointwise scalar curvature of g = u^(4/(n-2)) delta at radius r.

    R = -4 (n-1)/(n-2) * u^(-(n+2)/(n-2)) * (u'' + (n-1) u'/r); vanishes
    identically when u is flat-harmonic (Schwarzschild).
    """
    n = metric.n
    r = np.asarray(r, dtype=float)
    u = np.asarray(metric.profile.value(r), dtype=float)
    lap = metric.profile.deriv2(r) + (n - 1) * metric.profile.deriv1(r) / r
    out = -4.0 * (n - 1) / (n - 2) * u ** (-(n + 2.0) / (n - 2.0)) * lap
    return out if out.ndim else float(out)


def _neville_at_zero(x, y):
    """Polynomial through (x_i, y_i) evaluated at 0 (Neville recursion)."""
    x = np.asarray(x, dtype=float)
    y = np.array(y, dtype=float)
    k = len(x)
    for j in range(1, k):
        for i in range(k - j):
            y[i] = (x[i + j] * y[i] - x[i] * y[i + 1]) / (x[i + j] - x[i])
    return float(y[0])


def power_coefficient_limit(
    sample,
    n: int,
    base_radius: float,
    rtol: float = ADM_RTOL,
    samples: int = 4,
    what: str = "coefficient",
) -> float:
    """Limit of sample(r) as r -> inf assuming a series in s = r^-(n-2).

    Evaluates at radii base_radius * 2^k and extrapolates to s = 0 by
    polynomial elimination of the first ``samples - 1`` correction
    powers (Richardson on the geometric s-grid).  The result must agree
    with the one dropping the farthest radius to relative ``rtol``,
    otherwise the deviation has no clean r^-(n-2) expansion and
    ``SlowDecay`` is raised.
    """
    radii = base_radius * 2.0 ** np.arange(samples)
    s = radii ** (-(n - 2.0))
    s /= s[0]
    f = np.array([float(sample(r)) for r in radii])
    if not np.all(np.isfinite(f)):
        raise SlowDecay(f"{what}: non-finite samples at large radii")
    full = _neville_at_zero(s, f)
    shorter = _neville_at_zero(s[:-1], f[:-1])
    scale = max(1.0, abs(full))
    if abs(full - shorter) > rtol * scale:
        raise SlowDecay(
            f"{what}: extrapolation unstable "
            f"({full:.12g} vs {shorter:.12g} at radii {base_radius:g}*2^k)"
        )
    return full


def adm_mass(
    metric: RadialMetric,
    radius_factor: float = ADM_RADIUS_FACTOR,
    rtol: float = ADM_RTOL,
) -> float:
    """ADM mass of a conformally flat radial metric.

    For g = u^(4/(n-2)) delta the flux-integral definition reduces to
    twice the r^-(n-2) coefficient of u, extracted here as the
    extrapolated limit of 2 r^(n-2) (u - 1) at geometrically spaced
    radii.  Raises SlowDecay when the limit does not stabilize.
    """
    n = metric.n
    dev = metric.profile.deviation
    return power_coefficient_limit(
        lambda r: 2.0 * r ** (n - 2) * float(dev(r)),
        n,
        base_radius=radius_factor * metric.r0,
        rtol=rtol,
        what="ADM mass",
    )
