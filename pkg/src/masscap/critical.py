"""Critical area-normalized capacitor tests and mass-capacity inequalities.

Every radial metric is trivially a critical capacitor: the boundary is a
single orbit of the rotation group, so dPhi/dnu and H are constants and
the normalization

    dPhi/dnu = -(1/2) (n-2)/(n-1) * Lambda * H

always admits a matched Lambda.  The content of the theorems is then the
inequality  m >= C / (1 + Lambda/(c-1))  under R >= 0, H > 0 and the
scalar/mean-curvature pinching  S >= (n-2)/(n-1) * c * H^2  with c > 1,
with equality exactly on Schwarzschild exteriors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .capacity import CapacitySolution, capacity_quadrature
from .errors import AlphaOutOfRange, ZeroMeanCurvature
from .geometry import BoundaryGeometry, RadialMetric, adm_mass, boundary_geometry, scalar_curvature
from .profiles import AffineOfFunction, RadialFunction

__all__ = [
    "Verdict",
    "CriticalityReport",
    "fit_lambda",
    "check_scalar_mean_hypothesis",
    "evaluate_theorem1",
    "overdetermined_solution",
]

#: Relative tolerance that separates HoldsWithEquality from HoldsStrict.
EQUALITY_RTOL = 1.0e-8

#: Pointwise floor for the scalar-curvature hypothesis R >= 0.
CURVATURE_FLOOR = -1.0e-10

#: Strictness margin for the c > 1 hypothesis.
C_STRICT_MARGIN = 1.0e-10


class Verdict(enum.Enum):
    HOLDS_STRICT = "HoldsStrict"
    HOLDS_WITH_EQUALITY = "HoldsWithEquality"
    HYPOTHESIS_VIOLATED = "HypothesisViolated"
    FAILS = "Fails"


def fit_lambda(metric: RadialMetric, sol: CapacitySolution) -> tuple[float, float]:
    """Matched normalization Lambda and the residual of the critical
    boundary condition (identically zero for a single round orbit)."""
    H = boundary_geometry(metric).mean_curvature
    if H == 0.0:
        raise ZeroMeanCurvature("H = 0 at the boundary: Lambda undefined")
    lam = -2.0 * (metric.n - 1) / (metric.n - 2) * sol.normal_derivative / H
    residual = abs(
        sol.normal_derivative + 0.5 * (metric.n - 2) / (metric.n - 1) * lam * H
    )
    return lam, residual


def check_scalar_mean_hypothesis(boundary: BoundaryGeometry, n: int) -> tuple[float, bool]:
    """Pinching constant c = (n-1)/(n-2) * S/H^2 and whether c > 1.

    For a round single-orbit boundary inf S = S and max H^2 = H^2, so the
    hypothesis is exactly c > 1.
    """
    H = boundary.mean_curvature
    if H <= 0.0:
        raise ZeroMeanCurvature("scalar/mean hypothesis needs H > 0")
    c = (n - 1) / (n - 2) * boundary.scalar_curvature / H**2
    return c, bool(c > 1.0 + C_STRICT_MARGIN)


@dataclass(frozen=True)
class CriticalityReport:
    """Outcome of the mass-capacity inequality on one metric."""

    n: int
    Lambda: float
    residual: float
    c: float
    alpha: float
    beta: float
    Gamma: float
    mass: float
    capacity: float
    rhs_thm1: float
    rhs_cor1: float
    verdict: Verdict
    equality_gap: float
    scalar_min: float
    offending_radius: float | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return self.verdict is not Verdict.HYPOTHESIS_VIOLATED


def _scalar_curvature_floor(metric: RadialMetric, samples: int, r_factor: float):
    radii = np.geomspace(metric.r0, r_factor * metric.r0, samples)
    values = np.asarray(scalar_curvature(metric, radii), dtype=float)
    worst = int(np.argmin(values))
    return float(values[worst]), float(radii[worst])


def evaluate_theorem1(
    metric: RadialMetric,
    sol: CapacitySolution | None = None,
    equality_rtol: float = EQUALITY_RTOL,
    curvature_samples: int = 256,
    curvature_r_factor: float = 1.0e4,
) -> CriticalityReport:
    """Evaluate the mass-capacity inequality and classify the outcome.

    The hypotheses R >= 0 (sampled pointwise on a log grid), H > 0 and
    c > 1 gate the verdict; when they hold the verdict is
    HoldsWithEquality iff |m - rhs| <= tol, HoldsStrict for a positive
    gap, and Fails for a genuinely negative gap (a bug signal on
    hypothesis-satisfying radial data).
    """
    n = metric.n
    if sol is None:
        sol = capacity_quadrature(metric)
    boundary = boundary_geometry(metric)
    mass = adm_mass(metric)
    lam, residual = fit_lambda(metric, sol)
    scalar_min, scalar_argmin = _scalar_curvature_floor(
        metric, curvature_samples, curvature_r_factor
    )

    r_ok = scalar_min >= CURVATURE_FLOOR
    h_ok = boundary.mean_curvature > 0.0
    c = (n - 1) / (n - 2) * boundary.scalar_curvature / boundary.mean_curvature**2
    c_ok = c > 1.0 + C_STRICT_MARGIN

    if not (r_ok and h_ok and c_ok):
        return CriticalityReport(
            n=n, Lambda=lam, residual=residual, c=c,
            alpha=float("nan"), beta=float("nan"), Gamma=float("nan"),
            mass=mass, capacity=sol.capacity,
            rhs_thm1=float("nan"), rhs_cor1=float("nan"),
            verdict=Verdict.HYPOTHESIS_VIOLATED, equality_gap=float("nan"),
            scalar_min=scalar_min,
            offending_radius=None if r_ok else scalar_argmin,
        )

    beta = lam / (c - 1.0)
    alpha = beta / (1.0 + beta)
    gamma = lam * (1.0 / alpha - 1.0)
    gamma_alt = lam * (1.0 - alpha) / alpha
    if abs(gamma - gamma_alt) > 1e-12 * max(1.0, abs(gamma)):
        raise AssertionError("Gamma route disagreement (internal inconsistency)")

    rhs_thm1 = sol.capacity / (1.0 + lam / (c - 1.0))
    rhs_cor1 = sol.capacity / (1.0 + alpha * gamma / ((1.0 - alpha) * (c - 1.0)))
    gap = mass - rhs_thm1

    tol = equality_rtol * max(1.0, abs(mass))
    if abs(gap) <= tol:
        verdict = Verdict.HOLDS_WITH_EQUALITY
    elif gap > 0.0:
        verdict = Verdict.HOLDS_STRICT
    else:
        verdict = Verdict.FAILS

    return CriticalityReport(
        n=n, Lambda=lam, residual=residual, c=c,
        alpha=alpha, beta=beta, Gamma=gamma,
        mass=mass, capacity=sol.capacity,
        rhs_thm1=rhs_thm1, rhs_cor1=rhs_cor1,
        verdict=verdict, equality_gap=gap,
        scalar_min=scalar_min,
    )


def overdetermined_solution(
    metric: RadialMetric, sol: CapacitySolution, alpha: float
) -> RadialFunction:
    """Potential V = 1 + (alpha-1) Phi of the overdetermined problem.

    Verifies the boundary value V(r0) = alpha, the approach V -> 1, and
    the overdetermined Neumann condition
    dV/dnu = (1/2) (n-2)/(n-1) Gamma H V|_Sigma with
    Gamma = Lambda (1/alpha - 1).
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha = {alpha:g} must lie in (0, 1)")
    n, r0 = metric.n, metric.r0
    V = AffineOfFunction(1.0, alpha - 1.0, sol.phi)

    v0 = float(V.value(r0))
    if abs(v0 - alpha) > 1e-10 * max(1.0, abs(alpha)):
        raise AssertionError(f"V(r0) = {v0:.12g} differs from alpha = {alpha:.12g}")
    v_far = float(V.value(1e6 * r0))
    if abs(v_far - 1.0) > 1e-3:
        raise AssertionError(f"V does not approach 1 (V = {v_far:.6g} far out)")

    lam, _ = fit_lambda(metric, sol)
    gamma = lam * (1.0 / alpha - 1.0)
    H = boundary_geometry(metric).mean_curvature
    dv_dnu = (alpha - 1.0) * sol.normal_derivative
    target = 0.5 * (n - 2) / (n - 1) * gamma * H * alpha
    if abs(dv_dnu - target) > 1e-10 * max(1.0, abs(target)):
        raise AssertionError(
            f"overdetermined Neumann condition violated: {dv_dnu:.12g} vs {target:.12g}"
        )
    return V
