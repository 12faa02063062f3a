"""Curvature-induced and effective radial potentials.

Natural units throughout: hbar = 1 and 2m = 1, so energies are k^2 and
the geometric potential is V_s = -(1/4)(k1 - k2)^2.  The effective
radial potential for angular momentum mq is

    W_mq(rho) = -k1(rho)^2/4 + (mq^2 - 1/4)/rho^2

which is the potential seen by F(x) after the substitution psi = F/sqrt(rho)
in arc-length coordinates.  For mq = 0 the second term is attractive.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geometry import SurfaceProfile, curvature_at
from .numerics import integrate_adaptive


@dataclass(frozen=True)
class EffectivePotentialTable:
    mq: int
    nodes: List[Tuple[float, float, float]]  # (x, rho, w)
    profile_ref: str

    def __post_init__(self):
        if self.mq < 0:
            raise ValueError("mq must be nonnegative")
        if not self.nodes:
            raise ValueError("table needs at least one node")
        xs = [n[0] for n in self.nodes]
        rhos = [n[1] for n in self.nodes]
        ws = [n[2] for n in self.nodes]
        if any(r <= 0.0 for r in rhos):
            raise ValueError("table nodes must have rho > 0")
        if not all(a < b for a, b in zip(xs, xs[1:])):
            raise ValueError("x must be strictly increasing")
        if not all(a < b for a, b in zip(rhos, rhos[1:])):
            raise ValueError("rho must be strictly increasing")
        if not np.all(np.isfinite(ws)):
            raise ValueError("w must be finite at every node")

    @property
    def x(self) -> np.ndarray:
        return np.array([n[0] for n in self.nodes])

    @property
    def rho(self) -> np.ndarray:
        return np.array([n[1] for n in self.nodes])

    @property
    def w(self) -> np.ndarray:
        return np.array([n[2] for n in self.nodes])


def profile_label(profile: SurfaceProfile) -> str:
    if profile.kind == "analytic_gaussian":
        return "gaussian(a0=%g, sigma0=%g)" % (profile.a0, profile.sigma0)
    return "%s[%g, %g]" % (profile.kind, profile.domain[0],
                           profile.domain[1])


def surface_potential(profile: SurfaceProfile, rho: float) -> float:
    """V_s = -(1/4)(k1 - k2)^2, zero exactly where the point is umbilic."""
    c = curvature_at(profile, rho)
    d = c.k1 - c.k2
    return -0.25 * d * d


def effective_potential(profile: SurfaceProfile, mq: int,
                        rho: float) -> float:
    if rho <= 0.0:
        raise ValueError("rho must be positive (W is singular on the axis)")
    if mq < 0:
        raise ValueError("mq must be nonnegative")
    c = curvature_at(profile, rho)
    return -0.25 * c.k1 * c.k1 + (mq * mq - 0.25) / (rho * rho)


def binding_condition(profile: SurfaceProfile, mq: int, rho: float) -> bool:
    """True iff the potential is locally attractive, k1^2 > (4 mq^2 - 1)/rho^2.

    Equivalent to W_mq(rho) < 0.  On a plane this holds for mq = 0 only.
    """
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    c = curvature_at(profile, rho)
    return c.k1 * c.k1 > (4.0 * mq * mq - 1.0) / (rho * rho)


def near_origin_w0(a0: float, sigma0: float, x: float) -> float:
    """Small-x approximation of W_0 for the Gaussian bump.

    The constant term -a0^2/sigma0^4 is -k1(0)^2/4; the 1/x^2 term is
    the attractive anti-centrifugal part.
    """
    if x <= 0.0:
        raise ValueError("x must be positive")
    flat = a0 * a0 / sigma0 ** 4  # depth set by the axis curvature
    return -0.25 / (x * x) - flat


def default_potential_grid(profile: SurfaceProfile, mq: int,
                           n: int = 1000,
                           rho_max: Optional[float] = None) -> np.ndarray:
    """Radial sample grid for potential tables.

    mq = 0 gets log spacing from 1e-3 of the profile's length scale so
    the -1/(4 rho^2) well is resolved; mq >= 1 is uniform.
    """
    lo, hi = profile.domain
    if rho_max is not None:
        if not lo < rho_max <= hi + 1e-12 * (1.0 + hi):
            raise ValueError("rho_max outside profile domain")
        hi = float(rho_max)
    if n < 2:
        raise ValueError("need at least 2 grid nodes")
    scale = profile.sigma0 if profile.sigma0 else 1.0
    if mq == 0:
        start = max(lo, 1e-3 * scale)
        if start <= 0.0:
            start = 1e-3 * scale
        return np.geomspace(start, hi, n)
    start = lo if lo > 0.0 else hi / n
    return np.linspace(start, hi, n)


def effective_potential_table(profile: SurfaceProfile, mq: int,
                              grid: Sequence[float]) -> EffectivePotentialTable:
    """Tabulate (x(rho), rho, W_mq(rho)) over a strictly increasing grid.

    Arc length is accumulated segment by segment with the adaptive
    quadrature, so x inherits its 1e-12 tolerance instead of an
    interpolation error.
    """
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValueError("grid must be a nonempty 1-d sequence")
    if np.any(g <= 0.0):
        raise ValueError("grid values must be positive")
    if not np.all(np.diff(g) > 0.0):
        raise ValueError("grid must be strictly increasing")
    lo = profile.domain[0]
    if g[0] < lo or not profile.contains(float(g[-1])):
        raise ValueError("grid leaves the profile domain")

    def speed(r):
        d = float(profile.df(r))
        return np.sqrt(1.0 + d * d)

    nodes = []
    x = 0.0
    prev = lo
    for rho in g:
        rho = float(rho)
        if rho > prev:
            x += integrate_adaptive(speed, prev, rho, tol=1e-12).value
            prev = rho
        nodes.append((x, rho, effective_potential(profile, mq, rho)))
    return EffectivePotentialTable(mq=int(mq), nodes=nodes,
                                   profile_ref=profile_label(profile))
