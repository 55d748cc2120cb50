"""Boundary criteria for positive mass: eigenvalue bounds and cone fill-in.

Round-sphere boundaries are the only induced geometries a radial metric
produces, and for those everything here is closed-form: the first Dirac
eigenvalue (n-1)/(2 rho), its curvature lower bound, the flat-cone
fill-in over the boundary, and the Gauss identity of the Euclidean
embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeScalarCurvature, ZeroMeanCurvature
from .geometry import BoundaryGeometry

__all__ = [
    "DiracCheck",
    "ConicalFillIn",
    "dirac_eigenvalue_check",
    "conical_fillin",
    "euclidean_gauss_identity",
]


@dataclass(frozen=True)
class DiracCheck:
    lambda1: float
    friedrich_bound: float
    herzlich_ok: bool


def dirac_eigenvalue_check(boundary: BoundaryGeometry, n: int) -> DiracCheck:
    """First Dirac eigenvalue of the round boundary sphere against the
    mean-curvature threshold.

    lambda_1 = (n-1)/(2 rho); the curvature lower bound
    sqrt((n-1)/(4(n-2)) * S) is saturated on round spheres, so the mass
    criterion lambda_1 >= H/2 is equivalent to S >= (n-2)/(n-1) H^2.
    """
    if boundary.scalar_curvature < 0.0:
        raise NegativeScalarCurvature(
            "Dirac bound needs nonnegative boundary scalar curvature"
        )
    lambda1 = (n - 1) / (2.0 * boundary.induced_radius)
    bound = float(np.sqrt((n - 1) / (4.0 * (n - 2)) * boundary.scalar_curvature))
    return DiracCheck(
        lambda1=lambda1,
        friedrich_bound=bound,
        herzlich_ok=bool(lambda1 >= boundary.mean_curvature / 2.0),
    )


@dataclass(frozen=True)
class ConicalFillIn:
    """Warped cone dr^2 + (r/cone_r0)^2 gamma over the boundary sphere,
    with slice {r = cone_r0} matching the boundary data."""

    n: int
    boundary: BoundaryGeometry
    cone_r0: float
    slice_radius: float
    slice_mean_curvature: float

    def scalar_curvature(self, r):
        """R_tilde(r) = cone_r0^2 r^-2 (S - (n-1)(n-2)/cone_r0^2)."""
        r = np.asarray(r, dtype=float)
        S = self.boundary.scalar_curvature
        out = self.cone_r0**2 / r**2 * (S - (self.n - 1) * (self.n - 2) / self.cone_r0**2)
        return out if out.ndim else float(out)

    @property
    def scalar_sign(self) -> float:
        """Sign of R_tilde (radius-independent)."""
        S = self.boundary.scalar_curvature
        return float(
            np.sign(S - (self.n - 1) * (self.n - 2) / self.cone_r0**2)
        )


def conical_fillin(boundary: BoundaryGeometry, n: int) -> ConicalFillIn:
    """Cone fill-in with cone_r0 = (n-1)/H.

    The slice at r = cone_r0 carries the boundary's induced metric and
    mean curvature exactly; the cone scalar curvature is nonnegative iff
    S >= (n-2)/(n-1) H^2, and the unit round sphere gives the flat cone.
    """
    H = boundary.mean_curvature
    if H <= 0.0:
        raise ZeroMeanCurvature("cone fill-in needs H > 0")
    cone_r0 = (n - 1) / H
    return ConicalFillIn(
        n=n,
        boundary=boundary,
        cone_r0=cone_r0,
        slice_radius=boundary.induced_radius,
        slice_mean_curvature=(n - 1) / cone_r0,
    )


def euclidean_gauss_identity(boundary: BoundaryGeometry, n: int) -> tuple[float, float]:
    """Euclidean mean curvature H0 of the round boundary sphere and the
    residual of the Gauss identity S = (n-2)/(n-1) H0^2 (zero for round
    spheres, where the embedding is umbilic).

    When S >= (n-2)/(n-1) H^2 holds, H0 >= H follows and is asserted.
    """
    S = boundary.scalar_curvature
    if S < 0.0:
        raise NegativeScalarCurvature(
            f"S = {S:g} < 0: no convex Euclidean round-sphere embedding"
        )
    H0 = float(np.sqrt((n - 1) / (n - 2) * S))
    residual = abs(S - (n - 2) / (n - 1) * H0**2)
    H = boundary.mean_curvature
    if S >= (n - 2) / (n - 1) * H**2 and H0 < H * (1.0 - 1e-12):
        raise AssertionError("H0 >= H must hold under the pinching hypothesis")
    return H0, residual
