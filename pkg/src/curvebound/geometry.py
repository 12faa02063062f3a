"""Surfaces of revolution in Monge form z = f(rho).

A profile carries the height function together with its first two
derivatives; everything downstream (curvatures, metric, arc length)
is computed from those three callables, so analytic and tabulated
profiles go through identical code paths.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .numerics import MonotoneInterpolant, find_root_bracketed, \
    integrate_adaptive


@dataclass(frozen=True)
class SurfaceProfile:
    """Height profile f(rho) of a surface of revolution.

    kind is one of 'analytic_gaussian', 'tabulated', 'inverse_designed'.
    For the Gaussian bump the shape parameters are kept on the profile
    so reports can echo them back.
    """

    f: Callable
    df: Callable
    d2f: Callable
    domain: tuple
    kind: str
    a0: Optional[float] = None
    sigma0: Optional[float] = None

    def __post_init__(self):
        lo, hi = self.domain
        if not (0.0 <= lo < hi):
            raise ValueError("domain must satisfy 0 <= rho_min < rho_max")
        if self.kind not in ("analytic_gaussian", "tabulated",
                             "inverse_designed"):
            raise ValueError("unknown profile kind %r" % (self.kind,))

    def contains(self, rho: float) -> bool:
        lo, hi = self.domain
        slack = 1e-12 * (1.0 + hi)
        return lo - slack <= rho <= hi + slack


@dataclass(frozen=True)
class CurvatureSample:
    rho: float
    k1: float          # meridional curvature
    k2: float          # azimuthal curvature
    mean: float        # (k1 + k2) / 2
    gauss: float       # k1 * k2
    metric_det: float  # rho^2 (1 + df^2)


def make_gaussian_bump(a0: float, sigma0: float,
                       rho_max: float) -> SurfaceProfile:
    """Inverted Gaussian dent f = -A0 exp(-rho^2/sigma0^2) on [0, rho_max]."""
    if a0 <= 0.0 or sigma0 <= 0.0:
        raise ValueError("a0 and sigma0 must be positive")
    if rho_max <= 0.0:
        raise ValueError("rho_max must be positive")
    s2 = sigma0 * sigma0

    def f(rho):
        return -a0 * np.exp(-np.square(rho) / s2)

    def df(rho):
        return 2.0 * a0 * rho / s2 * np.exp(-np.square(rho) / s2)

    def d2f(rho):
        r2 = np.square(rho)
        return (2.0 * a0 / s2) * (1.0 - 2.0 * r2 / s2) * np.exp(-r2 / s2)

    return SurfaceProfile(f, df, d2f, (0.0, float(rho_max)),
                          "analytic_gaussian", a0=float(a0),
                          sigma0=float(sigma0))


def make_plane(rho_max: float) -> SurfaceProfile:
    """Flat reference surface f = 0 (curvatures vanish identically)."""
    if rho_max <= 0.0:
        raise ValueError("rho_max must be positive")
    zero = lambda rho: np.zeros_like(np.asarray(rho, dtype=float)) \
        if np.ndim(rho) else 0.0
    return SurfaceProfile(zero, zero, zero, (0.0, float(rho_max)),
                          "tabulated")


def make_tabulated_profile(samples) -> SurfaceProfile:
    """Profile from (rho, f) samples.

    Derivatives come from a C2 cubic spline through the samples, not
    from finite differences of the raw data: d2f enters the meridional
    curvature squared, so derivative noise must stay controlled.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be (rho, f) pairs")
    if arr.shape[0] < 4:
        raise ValueError("need at least 4 samples")
    rho = arr[:, 0]
    if not np.all(np.diff(rho) > 0.0):
        raise ValueError("sample radii must be strictly increasing")
    if rho[0] < 0.0:
        raise ValueError("radii must be nonnegative")
    spline = CubicSpline(rho, arr[:, 1])
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)
    lo = float(rho[0])
    hi = float(rho[-1])
    slack = 1e-12 * (1.0 + hi)

    def clip(q):
        a = np.asarray(q, dtype=float)
        if np.any(a < lo - slack) or np.any(a > hi + slack):
            raise ValueError("rho outside tabulated range [%g, %g]"
                             % (lo, hi))
        return np.clip(a, lo, hi)

    def wrap(g):
        def h(rho_):
            out = g(clip(rho_))
            if np.ndim(rho_) == 0:
                return float(out)
            return out
        return h

    return SurfaceProfile(wrap(spline), wrap(d1), wrap(d2), (lo, hi),
                          "tabulated")


def curvature_at(profile: SurfaceProfile, rho: float) -> CurvatureSample:
    """Principal curvatures and metric determinant at radius rho.

    The azimuthal curvature formula is 0/0 on the axis; there it takes
    its limit d2f(0), which equals k1(0) (the axis is umbilic).
    """
    rho = float(rho)
    if not profile.contains(rho):
        raise ValueError("rho=%g outside profile domain" % rho)
    slope = float(profile.df(rho))
    curl = float(profile.d2f(rho))
    one = 1.0 + slope * slope
    k1 = curl * one ** -1.5
    if rho == 0.0:
        k2 = curl
    else:
        k2 = slope / (rho * math.sqrt(one))
    g = rho * rho * one
    return CurvatureSample(rho=rho, k1=k1, k2=k2, mean=0.5 * (k1 + k2),
                           gauss=k1 * k2, metric_det=g)


def _speed(profile: SurfaceProfile):
    def s(rho):
        return np.sqrt(1.0 + np.square(profile.df(rho)))
    return s


def arc_length(profile: SurfaceProfile, rho: float) -> float:
    """Meridian arc length x(rho) measured from the inner domain edge.

    For full-axis profiles that edge is rho = 0, matching the usual
    convention x(0) = 0.
    """
    rho = float(rho)
    if not profile.contains(rho):
        raise ValueError("rho=%g outside profile domain" % rho)
    lo = profile.domain[0]
    if rho <= lo:
        return 0.0
    speed = _speed(profile)
    return integrate_adaptive(lambda r: float(speed(r)), lo, rho,
                              tol=1e-12).value


def rho_of_x(profile: SurfaceProfile, x: float) -> float:
    """Invert the arc-length map; |arc_length(result) - x| <= 1e-9 (1+x)."""
    x = float(x)
    lo, hi = profile.domain
    total = arc_length(profile, hi)
    slack = 1e-9 * (1.0 + abs(x))
    if x < -slack or x > total + slack:
        raise ValueError("x=%g outside [0, %g]" % (x, total))
    if x <= 0.0:
        return lo
    if x >= total:
        return hi
    r = find_root_bracketed(lambda r_: arc_length(profile, r_) - x,
                            lo, hi, tol=1e-12 * (1.0 + hi))
    return float(min(max(r, lo), hi))


class ArcMap:
    """Tabulated x <-> rho correspondence for a profile.

    arc_length/rho_of_x above re-integrate on every call, which is fine
    for spot checks but too slow inside solvers; this builds the map
    once on a fine grid (per-interval Simpson, cumulative sum) and
    answers queries through monotone interpolation.
    """

    def __init__(self, profile: SurfaceProfile, n: int = 20001):
        if n < 2:
            raise ValueError("need at least 2 map nodes")
        lo, hi = profile.domain
        rhos = np.linspace(lo, hi, n)
        speed = _speed(profile)
        v = speed(rhos)
        vm = speed(0.5 * (rhos[:-1] + rhos[1:]))
        h = np.diff(rhos)
        panels = h / 6.0 * (v[:-1] + 4.0 * vm + v[1:])
        xs = np.concatenate([[0.0], np.cumsum(panels)])
        self.profile = profile
        self.grid_rho = rhos
        self.grid_x = xs
        self.total = float(xs[-1])
        self._fwd = MonotoneInterpolant(rhos, xs)
        self._inv = MonotoneInterpolant(xs, rhos)

    def x_of_rho(self, rho):
        return self._fwd(rho)

    def rho_at_x(self, x):
        return self._inv(x)


def build_arc_map(profile: SurfaceProfile, n: int = 20001) -> ArcMap:
    return ArcMap(profile, n)


def write_profile_csv(profile: SurfaceProfile, path: str,
                      n_nodes: int = 1000) -> None:
    """Dump `rho,f` samples (uniform over the domain, 12 significant
    digits, decimal notation) so a profile can round-trip through
    make_tabulated_profile."""
    if n_nodes < 4:
        raise ValueError("need at least 4 export nodes")
    lo, hi = profile.domain
    rhos = np.linspace(lo, hi, n_nodes)
    fmt = lambda v: np.format_float_positional(
        float(v), precision=12, unique=False, fractional=False)
    lines = ["rho,f"]
    for r in rhos:
        lines.append("%s,%s" % (fmt(r), fmt(profile.f(float(r)))))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_profile_csv(path: str) -> SurfaceProfile:
    """Load a `rho,f` table written by write_profile_csv (or by hand)."""
    rows = []
    with open(path) as fh:
        for i, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            if i == 0 and line.lower().replace(" ", "") == "rho,f":
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError("line %d: expected two columns" % (i + 1))
            rows.append((float(parts[0]), float(parts[1])))
    return make_tabulated_profile(rows)
