"""Static vacuum triples: residuals, Smarr formula, rigidity pipeline.

For a radial conformally flat metric g = u^(4/(n-2)) delta with
phi = (2/(n-2)) log u, the static equations Hess V = V Ric, Delta V = 0
reduce by symmetry to two scalar residuals (Euclidean-frame radial and
tangential components):

    E_rr = V'' - phi' V'          + (n-1) V (phi'' + phi'/r)
    E_tt = V'/r + phi' V'         + V (phi'' + (2n-3) phi'/r + (n-2) phi'^2)

and harmonicity to (r^(n-1) u^2 V')' = 0.  Both reductions were checked
symbolically against the Schwarzschild potential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .capacity import capacity_quadrature
from .conformal import conformal_transform, reconstruct_from_state
from .errors import (
    AlphaOutOfRange,
    EqualityGapExceeded,
    FluxDrift,
    NotStatic,
    SlowDecay,
    ZeroMeanCurvature,
)
from .geometry import RadialMetric, boundary_geometry, power_coefficient_limit, sphere_volume
from .profiles import RadialFunction
from .schwarzschild import SchwarzschildData

__all__ = [
    "StaticTriple",
    "StaticResiduals",
    "static_residuals",
    "smarr_integral",
    "lemma1_normal_derivative",
    "normal_ricci",
    "rigidity_pipeline",
    "RigidityReport",
]

#: Sup-norm tolerance under which a triple counts as static.
STATIC_RTOL = 1.0e-8


@dataclass(frozen=True)
class StaticTriple:
    """Radial metric with a candidate static potential."""

    metric: RadialMetric
    potential: RadialFunction

    @property
    def alpha_boundary(self) -> float:
        return float(self.potential.value(self.metric.r0))

    @classmethod
    def schwarzschild(cls, data: SchwarzschildData, spin: bool = True) -> "StaticTriple":
        from .schwarzschild import SchwarzschildStaticPotential

        return cls(data.metric(spin), SchwarzschildStaticPotential(data.n, data.m))


@dataclass(frozen=True)
class StaticResiduals:
    """Sup-norm residuals of the static equations plus the two mass
    extractions they imply."""

    hessian_residual: float
    laplace_residual: float
    smarr_mass: float
    expansion_mass: float

    def is_static(self, tol: float = STATIC_RTOL) -> bool:
        return max(self.hessian_residual, self.laplace_residual) <= tol


def _phi_derivs(metric: RadialMetric, r):
    """phi = (2/(n-2)) log u and its first two radial derivatives."""
    prof = metric.profile
    u = np.asarray(prof.value(r), dtype=float)
    du = np.asarray(prof.deriv1(r), dtype=float)
    d2u = np.asarray(prof.deriv2(r), dtype=float)
    k = 2.0 / (metric.n - 2)
    phi1 = k * du / u
    phi2 = k * (d2u / u - (du / u) ** 2)
    return u, phi1, phi2


def static_equation_residuals(triple: StaticTriple, r):
    """Pointwise (E_rr, E_tt, Delta_g V) at the given radii."""
    metric, V = triple.metric, triple.potential
    n = metric.n
    r = np.asarray(r, dtype=float)
    u, phi1, phi2 = _phi_derivs(metric, r)
    v = np.asarray(V.value(r), dtype=float)
    dv = np.asarray(V.deriv1(r), dtype=float)
    d2v = np.asarray(V.deriv2(r), dtype=float)

    ric_rr = -(n - 1) * (phi2 + phi1 / r)
    ric_tt = -(phi2 + (2 * n - 3) * phi1 / r + (n - 2) * phi1**2)
    e_rr = (d2v - phi1 * dv) - v * ric_rr
    e_tt = (dv / r + phi1 * dv) - v * ric_tt
    lap = u ** (-4.0 / (n - 2)) * (d2v + (n - 1) * dv / r + (n - 2) * phi1 * dv)
    return e_rr, e_tt, lap


def smarr_integral(triple: StaticTriple, radii) -> float:
    """Mass from the flux of V over coordinate spheres.

    flux(r) = omega * r^(n-1) u^2 V'(r) is radius-independent for a
    harmonic potential; the returned mass is flux/((n-2) omega).
    Raises FluxDrift when the flux varies beyond tolerance.
    """
    metric, V = triple.metric, triple.potential
    n = metric.n
    radii = np.asarray(radii, dtype=float)
    u = np.asarray(metric.profile.value(radii), dtype=float)
    dv = np.asarray(V.deriv1(radii), dtype=float)
    omega = sphere_volume(n)
    fluxes = omega * radii ** (n - 1) * u**2 * dv
    mean = float(np.mean(fluxes))
    scale = max(1.0, abs(mean))
    drift = float(np.max(np.abs(fluxes - mean)))
    if drift > 1e-8 * scale:
        raise FluxDrift(
            f"flux varies by {drift:g} across radii (mean {mean:g}): V is not harmonic"
        )
    return mean / ((n - 2) * omega)


def static_residuals(
    triple: StaticTriple,
    samples: int = 256,
    r_factor: float = 1.0e3,
) -> StaticResiduals:
    """Residual report on a log grid of radii from r0 outward."""
    metric = triple.metric
    n, r0 = metric.n, metric.r0
    radii = np.geomspace(r0, r_factor * r0, samples)
    e_rr, e_tt, lap = static_equation_residuals(triple, radii)
    hess = float(max(np.max(np.abs(e_rr)), np.max(np.abs(e_tt))))
    lap_res = float(np.max(np.abs(lap)))

    flux_radii = r0 * np.array([1.0, 4.0, 32.0, 256.0])
    try:
        smarr = smarr_integral(triple, flux_radii)
    except FluxDrift:
        smarr = float("nan")
    try:
        expansion = power_coefficient_limit(
            lambda r: -(r ** (n - 2)) * float(triple.potential.deviation(r)),
            n,
            base_radius=1.0e3 * r0,
            what="static expansion mass",
        )
    except SlowDecay:
        expansion = float("nan")
    return StaticResiduals(
        hessian_residual=hess,
        laplace_residual=lap_res,
        smarr_mass=smarr,
        expansion_mass=expansion,
    )


def normal_ricci(metric: RadialMetric, r: float) -> float:
    """Ric(nu, nu) for the g-unit radial normal at radius r.

    On the umbilic radial boundary the Gauss equation of the scalar-flat
    ambient reads 2 Ric(nu,nu) = -(S - (n-2)/(n-1) H^2 + |O|^2) with
    O = 0.
    """
    n = metric.n
    u, phi1, phi2 = _phi_derivs(metric, np.asarray(r, dtype=float))
    ric_rr = -(n - 1) * (phi2 + phi1 / r)
    return float(u ** (-4.0 / (n - 2)) * ric_rr)


def lemma1_normal_derivative(triple: StaticTriple) -> tuple[float, float]:
    """Equipotential-boundary identity for the static potential.

    predicted = 1/2 [ (n-2)/(n-1) (f-1) H + |O|^2/H ] V(r0) with
    f = (n-1)/(n-2) S/H^2 and O = 0 for radial boundaries; actual is the
    g-unit normal derivative of V at r0.
    """
    metric, V = triple.metric, triple.potential
    n, r0 = metric.n, metric.r0
    boundary = boundary_geometry(metric)
    H = boundary.mean_curvature
    if H == 0.0:
        raise ZeroMeanCurvature("Lemma-1 prediction needs H != 0")
    f = (n - 1) / (n - 2) * boundary.scalar_curvature / H**2
    predicted = 0.5 * (n - 2) / (n - 1) * (f - 1.0) * H * float(V.value(r0))
    u0 = float(metric.profile.value(r0))
    actual = float(V.deriv1(r0)) * u0 ** (-2.0 / (n - 2))
    return predicted, actual


@dataclass(frozen=True)
class RigidityReport:
    """Outcome of the equipotential-boundary rigidity pipeline."""

    alpha: float
    c: float
    smarr_mass: float
    boundary_integral_mass: float
    capacity: float
    equality_gap: float
    reconstructed: SchwarzschildData
    residuals: StaticResiduals


def rigidity_pipeline(
    triple: StaticTriple,
    static_tol: float = STATIC_RTOL,
    equality_rtol: float = 1.0e-8,
) -> RigidityReport:
    """Run the uniqueness argument for static vacuums.

    Checks staticity, extracts alpha = V(r0) in (0,1), computes the mass
    by the Smarr flux and by the boundary integral
    (alpha/2) (c-1)/((n-1) omega) * H * area, the capacity of the metric
    by quadrature, certifies m = (1-alpha) C, and reconstructs the
    Schwarzschild data through the conformal equality case.
    """
    metric = triple.metric
    n = metric.n
    residuals = static_residuals(triple)
    if not residuals.is_static(static_tol):
        raise NotStatic(
            f"static residuals {residuals.hessian_residual:g}/"
            f"{residuals.laplace_residual:g} exceed {static_tol:g}"
        )

    alpha = triple.alpha_boundary
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"boundary potential alpha = {alpha:g} not in (0, 1)")

    boundary = boundary_geometry(metric)
    H = boundary.mean_curvature
    if H <= 0.0:
        raise ZeroMeanCurvature("rigidity pipeline needs H > 0")
    c = (n - 1) / (n - 2) * boundary.scalar_curvature / H**2
    if c <= 1.0:
        raise ValueError(f"rigidity pipeline needs c > 1 (got {c:g})")

    omega = sphere_volume(n)
    m_smarr = residuals.smarr_mass
    m_boundary = 0.5 * alpha * (c - 1.0) / ((n - 1) * omega) * H * boundary.area

    sol = capacity_quadrature(metric)
    gap = m_smarr - (1.0 - alpha) * sol.capacity
    if abs(gap) > equality_rtol * max(1.0, abs(m_smarr)):
        raise EqualityGapExceeded(
            f"m - (1-alpha) C = {gap:.3e} exceeds tolerance on a static triple"
        )

    state = conformal_transform(metric, sol, alpha=alpha)
    reconstructed = reconstruct_from_state(state)
    return RigidityReport(
        alpha=alpha,
        c=c,
        smarr_mass=m_smarr,
        boundary_integral_mass=m_boundary,
        capacity=sol.capacity,
        equality_gap=gap,
        reconstructed=reconstructed,
        residuals=residuals,
    )
