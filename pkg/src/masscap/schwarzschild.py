"""Closed-form Schwarzschild quantities: the exact oracle for everything.

All formulas are elementary functions of the dimensionless mass ratio
x = m/(2 r0^(n-2)); the exterior region is parametrized by (n, m, r0)
with x > -1, and x = 1 is the degenerate minimal-surface boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateHorizon
from .profiles import RadialFunction, SchwarzschildProfile
from .geometry import RadialMetric

__all__ = [
    "SchwarzschildData",
    "SchwarzschildReport",
    "schwarzschild_report",
    "capacity_potential",
    "static_potential",
    "photon_sphere_radius",
    "SchwarzschildCapacityPotential",
    "SchwarzschildStaticPotential",
]


@dataclass(frozen=True)
class SchwarzschildData:
    """Exterior region of the Schwarzschild manifold outside r = r0."""

    n: int
    m: float
    r0: float

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"dimension n={self.n} must be >= 3")
        if self.r0 <= 0.0:
            raise ValueError("r0 must be positive")
        if self.x <= -1.0:
            raise ValueError(
                f"mass ratio x={self.x:g} <= -1: r0 inside the singular sphere"
            )

    @property
    def x(self) -> float:
        """Dimensionless mass ratio m/(2 r0^(n-2))."""
        return self.m / (2.0 * self.r0 ** (self.n - 2))

    def metric(self, spin: bool = True) -> RadialMetric:
        return RadialMetric(self.n, self.r0, SchwarzschildProfile(self.n, self.m), spin)


@dataclass(frozen=True)
class SchwarzschildReport:
    """Every closed-form boundary quantity for one exterior region."""

    n: int
    m: float
    r0: float
    x: float
    rho: float
    H: float
    dPhi_dnu: float
    Lambda: float
    capacity: float
    c: float
    alpha: float
    V_at_boundary: float


def schwarzschild_report(data: SchwarzschildData) -> SchwarzschildReport:
    """Evaluate the closed forms; x = 1 raises DegenerateHorizon.

    rho      = r0 (1+x)^(2/(n-2))
    H        = (n-1)/r0 (1-x)(1+x)^(-n/(n-2))
    dPhi/dnu = -(n-2)/r0 (1+x)^(-n/(n-2))
    Lambda   = 2/(1-x)
    capacity = m/2 + r0^(n-2)
    c        = ((1+x)/(1-x))^2
    alpha    = V(r0) = (1-x)/(1+x)
    """
    n, m, r0, x = data.n, data.m, data.r0, data.x
    if x == 1.0:
        raise DegenerateHorizon("x = 1: minimal-surface boundary, Lambda and c undefined")
    opx = 1.0 + x
    rho = r0 * opx ** (2.0 / (n - 2))
    H = (n - 1) / r0 * (1.0 - x) * opx ** (-n / (n - 2.0))
    dphi = -(n - 2) / r0 * opx ** (-n / (n - 2.0))
    lam = 2.0 / (1.0 - x)
    cap = m / 2.0 + r0 ** (n - 2)
    c = (opx / (1.0 - x)) ** 2
    alpha = (1.0 - x) / opx
    return SchwarzschildReport(
        n=n, m=m, r0=r0, x=x, rho=rho, H=H, dPhi_dnu=dphi,
        Lambda=lam, capacity=cap, c=c, alpha=alpha, V_at_boundary=alpha,
    )


def capacity_potential(data: SchwarzschildData, r):
    """Boundary capacity potential Phi(r) = (1+x0)(1+x(r))^-1 (r0/r)^(n-2)."""
    n = data.n
    r = np.asarray(r, dtype=float)
    xr = data.m / (2.0 * r ** (n - 2))
    out = (1.0 + data.x) / (1.0 + xr) * (data.r0 / r) ** (n - 2)
    return out if out.ndim else float(out)


def static_potential(data: SchwarzschildData, r):
    """Static potential V(r) = (1 - m/(2 r^(n-2))) / (1 + m/(2 r^(n-2)))."""
    r = np.asarray(r, dtype=float)
    xr = data.m / (2.0 * r ** (data.n - 2))
    out = (1.0 - xr) / (1.0 + xr)
    return out if out.ndim else float(out)


def photon_sphere_radius(n: int, m: float) -> float:
    """Coordinate radius of the photon sphere of mass m > 0.

    Solves ((1+x)/(1-x))^2 = n/(n-2) for x = m/(2 r^(n-2)), giving

        r_S^(n-2) = (m/2) * (n - 1 + sqrt(n(n-2))).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if m <= 0.0:
        raise ValueError("photon sphere requires m > 0")
    return float(((m / 2.0) * (n - 1 + np.sqrt(n * (n - 2.0)))) ** (1.0 / (n - 2)))


class SchwarzschildCapacityPotential(RadialFunction):
    """Phi_{r0} as a radial function with exact derivatives.

    Written in the harmonic coordinate s = r^(2-n):
    Phi = A * s/(1 + (m/2) s) with A = (1+x0) r0^(n-2).
    """

    def __init__(self, data: SchwarzschildData):
        self.n = data.n
        self.m = data.m
        self.amp = (1.0 + data.x) * data.r0 ** (data.n - 2)

    def _s(self, r):
        return r ** (2.0 - self.n)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        s = self._s(r)
        out = self.amp * s / (1.0 + 0.5 * self.m * s)
        return out if out.ndim else float(out)

    def deriv1(self, r):
        r = np.asarray(r, dtype=float)
        s = self._s(r)
        ds = (2.0 - self.n) * r ** (1.0 - self.n)
        out = self.amp / (1.0 + 0.5 * self.m * s) ** 2 * ds
        return out if out.ndim else float(out)

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        s = self._s(r)
        ds = (2.0 - self.n) * r ** (1.0 - self.n)
        d2s = (2.0 - self.n) * (1.0 - self.n) * r**-self.n
        q = 1.0 + 0.5 * self.m * s
        out = self.amp * (-self.m / q**3 * ds**2 + d2s / q**2)
        return out if out.ndim else float(out)


class SchwarzschildStaticPotential(RadialFunction):
    """V_m as a radial function with exact derivatives and stable deviation."""

    def __init__(self, n: int, m: float):
        self.n = int(n)
        self.m = float(m)

    def _split(self, r):
        r = np.asarray(r, dtype=float)
        s = r ** (2.0 - self.n)
        return s, (2.0 - self.n) * r ** (1.0 - self.n), (2.0 - self.n) * (1.0 - self.n) * r**-self.n

    def value(self, r):
        s, _, _ = self._split(r)
        out = (1.0 - 0.5 * self.m * s) / (1.0 + 0.5 * self.m * s)
        return out if out.ndim else float(out)

    def deviation(self, r):
        s, _, _ = self._split(r)
        out = -self.m * s / (1.0 + 0.5 * self.m * s)
        return out if out.ndim else float(out)

    def deriv1(self, r):
        s, ds, _ = self._split(r)
        out = -self.m / (1.0 + 0.5 * self.m * s) ** 2 * ds
        return out if out.ndim else float(out)

    def deriv2(self, r):
        s, ds, d2s = self._split(r)
        q = 1.0 + 0.5 * self.m * s
        out = self.m**2 / q**3 * ds**2 - self.m / q**2 * d2s
        return out if out.ndim else float(out)
