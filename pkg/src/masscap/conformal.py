"""Conformal pipeline behind the mass-capacity inequality proof.

Given a radial metric with capacity potential Phi and the substitution
alpha = beta/(1+beta), beta = Lambda/(c-1), the shifted factor

    Psi = 1 - ((1-alpha)/2) Phi

defines the conformal metric (u Psi)^(4/(n-2)) delta whose mass drops by
(1-alpha) times the capacity.  The pipeline checks each identity of that
construction numerically and reconstructs the Schwarzschild data in the
zero-mass equality case.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .capacity import CapacitySolution
from .critical import fit_lambda
from .errors import AlphaOutOfRange
from .geometry import (
    BoundaryGeometry,
    RadialMetric,
    adm_mass,
    boundary_geometry,
    scalar_curvature,
)
from .profiles import AffineOfFunction, ConformalProfile, ProductFunction
from .schwarzschild import SchwarzschildData

__all__ = [
    "AlphaBranch",
    "ConformalState",
    "hm_condition",
    "alpha_branch",
    "conformal_transform",
    "transformed_boundary",
    "verify_pmt_hypotheses",
    "equality_reconstruction",
    "reconstruct_from_state",
]

#: Slack accepted on the branch boundary alpha^2 c = 1 (Schwarzschild
#: sits exactly there, so both branch code paths must take it).
BRANCH_ATOL = 1.0e-9


class AlphaBranch(enum.Enum):
    ALPHA_SQ_C_GEQ_ONE = "alpha^2 c >= 1"
    ALPHA_SQ_C_LEQ_ONE = "alpha^2 c <= 1"


class _ProductProfile(ConformalProfile):
    """Conformal factor u * Psi as a full profile (factors multiply)."""

    kind = "conformal-product"

    def __init__(self, base: ConformalProfile, shift):
        super().__init__(base.n)
        self._prod = ProductFunction(base, shift)

    def value(self, r):
        return self._prod.value(r)

    def deviation(self, r):
        return self._prod.deviation(r)

    def deriv1(self, r):
        return self._prod.deriv1(r)

    def deriv2(self, r):
        return self._prod.deriv2(r)


@dataclass(frozen=True)
class ConformalState:
    """One conformal transform: base metric, potential, alpha and the
    transformed metric with profile u * Psi."""

    base: RadialMetric
    sol: CapacitySolution
    alpha: float
    c: float
    Lambda: float
    psi: AffineOfFunction
    conformal_metric: RadialMetric
    branch: AlphaBranch

    @property
    def alpha_sq_c(self) -> float:
        return self.alpha**2 * self.c

    @property
    def psi_boundary(self) -> float:
        return 0.5 * (1.0 + self.alpha)


def hm_condition(metric: RadialMetric, sol: CapacitySolution, alpha: float) -> bool:
    """Boundary inequality -2 alpha/(1+alpha) dPhi/dnu >= (n-2)/(n-1) H.

    Scalar on a radial boundary; equality is accepted within relative
    roundoff so the Schwarzschild threshold case evaluates to True.
    """
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f"alpha = {alpha:g} must lie in [0, 1]")
    n = metric.n
    H = boundary_geometry(metric).mean_curvature
    lhs = -2.0 * alpha / (1.0 + alpha) * sol.normal_derivative
    rhs = (n - 2) / (n - 1) * H
    return bool(lhs >= rhs - 1e-12 * max(abs(lhs), abs(rhs)))


def alpha_branch(lam: float, c: float) -> tuple[float, AlphaBranch]:
    """Canonical alpha = beta/(1+beta), beta = Lambda/(c-1), and which
    side of alpha^2 c = 1 it falls on.

    On the >= branch the inequality c - 1 >= (1-alpha^2)/alpha^2 is
    asserted; it is exactly the statement that the matched boundary
    condition implies the Hirsch-Miao condition.
    """
    if lam <= 0.0:
        raise ValueError(f"Lambda = {lam:g} must be positive")
    if c <= 1.0:
        raise ValueError(f"c = {c:g} must exceed 1")
    beta = lam / (c - 1.0)
    alpha = beta / (1.0 + beta)
    asq_c = alpha**2 * c
    if asq_c >= 1.0:
        branch = AlphaBranch.ALPHA_SQ_C_GEQ_ONE
        if c - 1.0 < (1.0 - alpha**2) / alpha**2 * (1.0 - 1e-12):
            raise AssertionError(
                "branch inconsistency: alpha^2 c >= 1 but c-1 < (1-alpha^2)/alpha^2"
            )
    else:
        branch = AlphaBranch.ALPHA_SQ_C_LEQ_ONE
    return alpha, branch


def conformal_transform(
    metric: RadialMetric,
    sol: CapacitySolution,
    alpha: float | None = None,
) -> ConformalState:
    """Build Psi = 1 - ((1-alpha)/2) Phi and the product-profile metric.

    With alpha omitted, the canonical substitution from the matched
    (Lambda, c) of the metric is used.
    """
    lam, _ = fit_lambda(metric, sol)
    c, _ = _pinching(metric)
    if alpha is None:
        alpha, branch = alpha_branch(lam, c)
    else:
        if not 0.0 < alpha < 1.0:
            raise AlphaOutOfRange(f"alpha = {alpha:g} must lie in (0, 1)")
        branch = (
            AlphaBranch.ALPHA_SQ_C_GEQ_ONE
            if alpha**2 * c >= 1.0
            else AlphaBranch.ALPHA_SQ_C_LEQ_ONE
        )
    psi = AffineOfFunction(1.0, -(1.0 - alpha) / 2.0, sol.phi)
    profile = _ProductProfile(metric.profile, psi)
    conformal_metric = RadialMetric(metric.n, metric.r0, profile, metric.spin)
    return ConformalState(
        base=metric,
        sol=sol,
        alpha=alpha,
        c=c,
        Lambda=lam,
        psi=psi,
        conformal_metric=conformal_metric,
        branch=branch,
    )


def _pinching(metric: RadialMetric) -> tuple[float, BoundaryGeometry]:
    boundary = boundary_geometry(metric)
    n = metric.n
    c = (n - 1) / (n - 2) * boundary.scalar_curvature / boundary.mean_curvature**2
    return c, boundary


def conformal_mass(state: ConformalState, rtol: float = 1e-8) -> float:
    """ADM mass of the transformed metric by independent extraction."""
    return adm_mass(state.conformal_metric, rtol=rtol)


def transformed_boundary(state: ConformalState) -> dict:
    """Closed-form and directly computed boundary data of the conformal
    metric.

    Closed forms (valid when alpha comes from the matched boundary
    condition):

        H_bar = 2^(2/(n-2)) (1 + c alpha) (1 + alpha)^(-n/(n-2)) H
        S_bar = 2^(4/(n-2)) (1 + alpha)^(-4/(n-2)) S

    The S_bar scaling is forced by the homothety of the boundary metrics
    (gamma_bar = Psi0^(4/(n-2)) gamma); both values must match the
    geometry of the product-profile metric.
    """
    n = state.base.n
    base_boundary = boundary_geometry(state.base)
    H, S = base_boundary.mean_curvature, base_boundary.scalar_curvature
    alpha, c = state.alpha, state.c

    h_closed = (
        2.0 ** (2.0 / (n - 2))
        * (1.0 + c * alpha)
        * (1.0 + alpha) ** (-n / (n - 2.0))
        * H
    )
    s_closed = 2.0 ** (4.0 / (n - 2)) * (1.0 + alpha) ** (-4.0 / (n - 2)) * S

    direct = boundary_geometry(state.conformal_metric)
    return {
        "H_bar_closed": h_closed,
        "S_bar_closed": s_closed,
        "H_bar_direct": direct.mean_curvature,
        "S_bar_direct": direct.scalar_curvature,
        "rho_bar": direct.induced_radius,
        "psi_normal_derivative": 0.25
        * alpha
        * (c - 1.0)
        * (n - 2)
        / (n - 1)
        * H,
    }


def verify_pmt_hypotheses(
    state: ConformalState,
    curvature_samples: int = 256,
    curvature_r_factor: float = 1.0e4,
    curvature_floor: float = -1.0e-10,
) -> bool:
    """Check the positive-mass-theorem hypotheses on the conformal side.

    Applies on the alpha^2 c <= 1 branch (with the Schwarzschild
    boundary case accepted): S_bar >= (n-2)/(n-1) H_bar^2 on the
    boundary and R_bar >= 0 on the sampled grid.  The algebraic lemma
    c (1+alpha)^2 >= (1 + c alpha)^2, equivalent to
    (c-1)(1 - c alpha^2) >= 0, backs the boundary inequality.
    """
    if state.alpha_sq_c > 1.0 + BRANCH_ATOL:
        raise ValueError(
            f"alpha^2 c = {state.alpha_sq_c:.12g} > 1: wrong branch for this check"
        )
    n = state.base.n
    data = transformed_boundary(state)
    s_bar, h_bar = data["S_bar_direct"], data["H_bar_direct"]
    boundary_ok = s_bar >= (n - 2) / (n - 1) * h_bar**2 * (1.0 - 1e-12)

    lemma = (state.c - 1.0) * (1.0 - state.alpha_sq_c)
    lemma_ok = lemma >= -1e-12 * max(1.0, state.c)

    radii = np.geomspace(state.base.r0, curvature_r_factor * state.base.r0, curvature_samples)
    r_bar = np.asarray(scalar_curvature(state.conformal_metric, radii), dtype=float)
    curvature_ok = bool(np.min(r_bar) >= curvature_floor)

    return bool(boundary_ok and lemma_ok and curvature_ok)


def equality_reconstruction(n: int, r_alpha: float, alpha: float) -> SchwarzschildData:
    """Schwarzschild data recovered from the equality case.

    When the conformal mass vanishes the transformed manifold is the
    Euclidean exterior of a round sphere of radius r_alpha and
    1/Psi = 1 + m/(2 r^(n-2)) with m = 2 (1-alpha)/(1+alpha) r_alpha^(n-2);
    the base manifold is then the Schwarzschild exterior of that mass
    with boundary at coordinate radius r_alpha.
    """
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha = {alpha:g} must lie in (0, 1)")
    if r_alpha <= 0.0:
        raise ValueError("r_alpha must be positive")
    m = 2.0 * (1.0 - alpha) / (1.0 + alpha) * r_alpha ** (n - 2)
    data = SchwarzschildData(n=n, m=m, r0=r_alpha)
    # boundary value of the reconstructed harmonic factor must be 2/(1+alpha)
    boundary_value = 1.0 + m / (2.0 * r_alpha ** (n - 2))
    if abs(boundary_value - 2.0 / (1.0 + alpha)) > 1e-12 * boundary_value:
        raise AssertionError("reconstructed factor misses its boundary value")
    return data


def reconstruct_from_state(state: ConformalState) -> SchwarzschildData:
    """Extract (r_alpha, alpha) from a zero-conformal-mass state and
    reconstruct; r_alpha is the induced boundary radius of the
    (Euclidean) conformal metric."""
    r_alpha = boundary_geometry(state.conformal_metric).induced_radius
    return equality_reconstruction(state.base.n, r_alpha, state.alpha)
