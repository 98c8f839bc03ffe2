"""Closed-form semicircle-law analytics.

Density, CDF, classical locations (the i/n quantiles), the signed shift
density g(x) = (x^4 - 4x^2 + 2) / (2 pi sqrt(4 - x^2)) on (-2, 2), its
antiderivative, and the moment integrals that reproduce the modified
Catalan numbers.

The density is normalized as rho(x) = sqrt(4 - x^2) / (2 pi), which is
the probability normalization forced by the quantile equation
cdf(gamma_i) = i/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularPointError, UnsupportedOrderError

#: Quantile solver: bisection down to this bracket width, then Newton polish.
_BISECT_WIDTH = 1e-13
_NEWTON_STEPS = 2

#: Gauss-Legendre node count for the theta-substituted quadratures.
_GL_NODES = 256


def rho_sc(x: float) -> float:
    """Semicircle probability density, supported on [-2, 2]."""
    if abs(x) >= 2.0:
        return 0.0
    return math.sqrt(4.0 - x * x) / (2.0 * math.pi)


def cdf_sc(x: float) -> float:
    """Semicircle CDF, clamped to {0, 1} outside [-2, 2]."""
    if x <= -2.0:
        return 0.0
    if x >= 2.0:
        return 1.0
    return 0.5 + x * math.sqrt(4.0 - x * x) / (4.0 * math.pi) + math.asin(0.5 * x) / math.pi


def classical_location(i: int, n: int) -> float:
    """The unique gamma in [-2, 2] with cdf_sc(gamma) = i/n."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    if i == n:
        return 2.0
    target = i / n
    lo, hi = -2.0, 2.0
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if cdf_sc(mid) < target:
            lo = mid
        else:
            hi = mid
    g = 0.5 * (lo + hi)
    for _ in range(_NEWTON_STEPS):
        d = rho_sc(g)
        if d <= 0.0:
            break
        g -= (cdf_sc(g) - target) / d
        g = min(2.0, max(-2.0, g))
    return g


def classical_locations(n: int) -> np.ndarray:
    """Array of gamma_1 .. gamma_n."""
    return np.array([classical_location(i, n) for i in range(1, n + 1)])


@dataclass(frozen=True)
class ClassicalLocationTable:
    """Precomputed classical locations for one dimension."""

    n: int
    gamma: np.ndarray

    @classmethod
    def build(cls, n: int) -> "ClassicalLocationTable":
        return cls(n=n, gamma=classical_locations(n))


def g_density(x: float) -> float:
    """Signed shift density on (-2, 2); |x| = 2 is a singular point."""
    if abs(x) == 2.0:
        raise SingularPointError("g has an inverse-square-root singularity at |x| = 2")
    if abs(x) > 2.0:
        return 0.0
    x2 = x * x
    return (x2 * x2 - 4.0 * x2 + 2.0) / (2.0 * math.pi * math.sqrt(4.0 - x2))


def g_antiderivative(x: float) -> float:
    """Antiderivative of g, vanishing at both endpoints."""
    if abs(x) > 2.0:
        raise ValueError(f"|x| must be <= 2, got {x}")
    return -(x**3 - 2.0 * x) * math.sqrt(4.0 - x * x) / (8.0 * math.pi)


def _gl_theta_rule():
    # x = 2 sin(theta) removes the endpoint singularity: g(x) dx becomes
    # (x^4 - 4x^2 + 2) / (2 pi) d(theta).
    nodes, weights = np.polynomial.legendre.leggauss(_GL_NODES)
    theta = 0.5 * math.pi * nodes
    w = 0.5 * math.pi * weights
    return 2.0 * np.sin(theta), w


def d_moment_integral(k: int) -> float:
    """Integral of g(x) x^k over [-2, 2]; equals the modified Catalan
    number of order (k - 2) / 2 for even k."""
    if k % 2:
        raise UnsupportedOrderError(
            "odd powers integrate to zero by symmetry; only even k supported"
        )
    if not 0 <= k <= 16:
        raise UnsupportedOrderError(f"k={k} outside supported range 0..16")
    x, w = _gl_theta_rule()
    integrand = (x**4 - 4.0 * x**2 + 2.0) * x**k / (2.0 * math.pi)
    return float(np.sum(w * integrand))


def predicted_shift(i: int, n: int, eta4: float) -> float:
    """Conjectured fourth-moment response of the i-th eigenvalue mean."""
    g = classical_location(i, n)
    return (g**3 - 2.0 * g) * eta4 / (4.0 * math.sqrt(n))
