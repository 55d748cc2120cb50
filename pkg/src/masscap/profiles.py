"""Radial profile functions and their calculus.

Everything geometric in this package is driven by radial functions
f: [r0, inf) -> R that we can evaluate together with their first two
radial derivatives.  Conformal factors u(r), capacity potentials Phi(r)
and static potentials V(r) all implement the same small interface, so
metric operations, conformal transforms and residual checks can be
written once.

The ``deviation`` method returns f(r) - 1 evaluated *without*
cancellation: asymptotic coefficient extraction multiplies it by
r^(n-2), and at the extraction radii the deviation can be far below
machine epsilon relative to 1.
"""

from __future__ import annotations

import numpy as np

from .errors import NonPositiveConformalFactor, ProfileDomainError

__all__ = [
    "RadialFunction",
    "AffineOfFunction",
    "ProductFunction",
    "ConformalProfile",
    "SchwarzschildProfile",
    "PerturbedProfile",
    "TabulatedProfile",
    "fd_weights",
]


class RadialFunction:
    """A scalar function of the radius with two derivatives.

    Subclasses implement ``value``, ``deriv1``, ``deriv2`` accepting
    floats or numpy arrays, and may override ``deviation`` (value - 1)
    when the naive subtraction would cancel.
    """

    def value(self, r):
        raise NotImplementedError

    def deriv1(self, r):
        raise NotImplementedError

    def deriv2(self, r):
        raise NotImplementedError

    def deviation(self, r):
        return self.value(r) - 1.0


class AffineOfFunction(RadialFunction):
    """c0 + c1 * f(r) for an underlying radial function f.

    Used for the static potential V = 1 + (alpha-1)*Phi and the
    conformal shift Psi = 1 - ((1-alpha)/2)*Phi.  The deviation is
    computed as (c0 - 1) + c1*f, which is exact when c0 == 1 and f
    itself decays to zero.
    """

    def __init__(self, c0: float, c1: float, f: RadialFunction):
        self.c0 = float(c0)
        self.c1 = float(c1)
        self.f = f

    def value(self, r):
        return self.c0 + self.c1 * self.f.value(r)

    def deriv1(self, r):
        return self.c1 * self.f.deriv1(r)

    def deriv2(self, r):
        return self.c1 * self.f.deriv2(r)

    def deviation(self, r):
        return (self.c0 - 1.0) + self.c1 * self.f.value(r)


class ProductFunction(RadialFunction):
    """Pointwise product f*g with derivatives by the Leibniz rule.

    deviation(f*g) = df + dg + df*dg keeps the product's deviation
    cancellation-free when both factors tend to 1.
    """

    def __init__(self, f: RadialFunction, g: RadialFunction):
        self.f = f
        self.g = g

    def value(self, r):
        return self.f.value(r) * self.g.value(r)

    def deriv1(self, r):
        return self.f.deriv1(r) * self.g.value(r) + self.f.value(r) * self.g.deriv1(r)

    def deriv2(self, r):
        return (
            self.f.deriv2(r) * self.g.value(r)
            + 2.0 * self.f.deriv1(r) * self.g.deriv1(r)
            + self.f.value(r) * self.g.deriv2(r)
        )

    def deviation(self, r):
        df = self.f.deviation(r)
        dg = self.g.deviation(r)
        return df + dg + df * dg


class ConformalProfile(RadialFunction):
    """Conformal factor u(r) of a metric u^(4/(n-2)) * delta.

    Concrete kinds: exact Schwarzschild, analytically perturbed
    Schwarzschild, and tabulated samples.  All must be strictly
    positive on [r0, inf) and tend to 1 at infinity at the
    r^-(n-2) coefficient rate.
    """

    kind = "generic"

    def __init__(self, n: int):
        if n < 3:
            raise ValueError(f"dimension n={n} must be >= 3")
        self.n = int(n)

    def check_positive(self, r0: float) -> None:
        """Raise unless u > 0 at the boundary and at spot-check radii."""
        radii = r0 * np.array([1.0, 2.0, 8.0, 64.0, 1024.0])
        vals = np.asarray(self.value(radii), dtype=float)
        if not np.all(vals > 0.0):
            bad = float(radii[np.argmax(vals <= 0.0)])
            raise NonPositiveConformalFactor(
                f"conformal factor u(r) <= 0 at r = {bad:g}"
            )


class SchwarzschildProfile(ConformalProfile):
    """u(r) = 1 + m/(2 r^(n-2)), the exact Schwarzschild factor."""

    kind = "schwarzschild"

    def __init__(self, n: int, m: float):
        super().__init__(n)
        self.m = float(m)

    def value(self, r):
        r = np.asarray(r, dtype=float)
        return 1.0 + self.m / (2.0 * r ** (self.n - 2))

    def deviation(self, r):
        r = np.asarray(r, dtype=float)
        return self.m / (2.0 * r ** (self.n - 2))

    def deriv1(self, r):
        r = np.asarray(r, dtype=float)
        return -(self.n - 2) * self.m / (2.0 * r ** (self.n - 1))

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        return (self.n - 1) * (self.n - 2) * self.m / (2.0 * r**self.n)


class PerturbedProfile(ConformalProfile):
    """Schwarzschild factor plus a superharmonic rational bump.

        u(r) = 1 + m/(2 r^(n-2)) + eps / (r^(n-2) + a)

    For eps >= 0 and a >= 0 the bump is superharmonic for the flat
    Laplacian (it is a concave function of the harmonic coordinate
    s = r^(2-n)), so the metric's scalar curvature is nonnegative.
    The bump decays at the mass rate and contributes 2*eps to the
    ADM mass, which is therefore m + 2*eps.
    """

    kind = "perturbed"

    def __init__(self, n: int, m: float, eps: float, scale: float):
        super().__init__(n)
        if eps < 0.0:
            raise ValueError("perturbation amplitude eps must be >= 0")
        if scale < 0.0:
            raise ValueError("perturbation scale must be >= 0")
        self.m = float(m)
        self.eps = float(eps)
        self.scale = float(scale)

    @property
    def adm_mass_exact(self) -> float:
        return self.m + 2.0 * self.eps

    def value(self, r):
        return 1.0 + self.deviation(r)

    def deviation(self, r):
        r = np.asarray(r, dtype=float)
        p = r ** (self.n - 2)
        return self.m / (2.0 * p) + self.eps / (p + self.scale)

    def deriv1(self, r):
        r = np.asarray(r, dtype=float)
        k = self.n - 2
        p = r**k
        dp = k * r ** (k - 1)
        return -self.m * k / (2.0 * r ** (self.n - 1)) - self.eps * dp / (p + self.scale) ** 2

    def deriv2(self, r):
        r = np.asarray(r, dtype=float)
        k = self.n - 2
        p = r**k
        dp = k * r ** (k - 1)
        d2p = k * (k - 1) * r ** (k - 2)
        q = p + self.scale
        bump = -self.eps * (d2p / q**2 - 2.0 * dp**2 / q**3)
        return (self.n - 1) * k * self.m / (2.0 * r**self.n) + bump


def fd_weights(nodes, x0: float, order: int):
    """Finite-difference weights for the ``order``-th derivative at x0.

    Fornberg's recursion on arbitrary nodes; returns an array w with
    f^(order)(x0) ~= sum_i w[i] * f(nodes[i]).
    """
    nodes = np.asarray(nodes, dtype=float)
    nn = len(nodes)
    if order >= nn:
        raise ValueError("need more nodes than the derivative order")
    c = np.zeros((nn, order + 1))
    c[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, nn):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def _stencil_window(i: int, npts: int, width: int):
    lo = max(0, min(i - width // 2, npts - width))
    return np.arange(lo, lo + width)


class TabulatedProfile(ConformalProfile):
    """Conformal factor given by samples on a log-uniform radial grid.

    Node derivatives use 4th-order finite differences in t = log r
    (5-point windows for u', 6-point near the edges for u''), then the
    three node arrays are interpolated by cubic splines in t.  Beyond
    the last node the profile continues with the matched asymptotic
    tail 1 + c*r^-(n-2).
    """

    kind = "tabulated"

    def __init__(self, n: int, radii, values):
        super().__init__(n)
        radii = np.asarray(radii, dtype=float)
        values = np.asarray(values, dtype=float)
        if radii.ndim != 1 or radii.shape != values.shape:
            raise ValueError("radii and values must be 1-d arrays of equal length")
        if len(radii) < 8:
            raise ValueError("tabulated profile needs at least 8 nodes")
        if np.any(np.diff(radii) <= 0.0):
            raise ValueError("radii must be strictly increasing")
        t = np.log(radii)
        h = np.diff(t)
        if np.max(np.abs(h - h[0])) > 1e-9 * h[0]:
            raise ValueError("tabulated grid must be log-uniform")
        if np.any(values <= 0.0):
            raise NonPositiveConformalFactor("tabulated values must be positive")

        self.r_min = float(radii[0])
        self.r_max = float(radii[-1])
        self._t = t
        self._h = float(h[0])
        self._dev = values - 1.0

        npts = len(t)
        dt1 = np.empty(npts)
        dt2 = np.empty(npts)
        for i in range(npts):
            w1 = _stencil_window(i, npts, 5)
            dt1[i] = fd_weights(t[w1], t[i], 1) @ values[w1]
            if 2 <= i <= npts - 3:
                w2 = w1
            else:
                w2 = _stencil_window(i, npts, 6)
            dt2[i] = fd_weights(t[w2], t[i], 2) @ values[w2]

        from scipy.interpolate import CubicSpline

        self._dev_spline = CubicSpline(t, self._dev)
        self._dt1_spline = CubicSpline(t, dt1)
        self._dt2_spline = CubicSpline(t, dt2)
        # matched tail coefficient: u ~ 1 + c_tail * r^-(n-2)
        self.tail_coefficient = float(self._dev[-1] * radii[-1] ** (self.n - 2))

    def _split(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r < self.r_min * (1.0 - 1e-12)):
            raise ProfileDomainError(
                f"tabulated profile evaluated below its grid (r_min={self.r_min:g})"
            )
        return r, r > self.r_max

    def deviation(self, r):
        r, tail = self._split(r)
        out = np.where(tail, 1.0, self._dev_spline(np.log(np.minimum(r, self.r_max))))
        out = np.where(tail, self.tail_coefficient * r ** (2 - self.n), out)
        return out if out.ndim else float(out)

    def value(self, r):
        return 1.0 + self.deviation(r)

    def deriv1(self, r):
        r, tail = self._split(r)
        t = np.log(np.minimum(r, self.r_max))
        body = self._dt1_spline(t) / r
        tail_val = (2 - self.n) * self.tail_coefficient * r ** (1 - self.n)
        out = np.where(tail, tail_val, body)
        return out if out.ndim else float(out)

    def deriv2(self, r):
        r, tail = self._split(r)
        t = np.log(np.minimum(r, self.r_max))
        body = (self._dt2_spline(t) - self._dt1_spline(t)) / r**2
        tail_val = (2 - self.n) * (1 - self.n) * self.tail_coefficient * r**-self.n
        out = np.where(tail, tail_val, body)
        return out if out.ndim else float(out)

    @classmethod
    def sample(cls, profile: ConformalProfile, r_min: float, r_max: float, points: int):
        """Tabulate another profile on a log-uniform grid (for testing
        the finite-difference path against closed forms)."""
        radii = np.geomspace(r_min, r_max, points)
        return cls(profile.n, radii, np.asarray(profile.value(radii), dtype=float))
