"""Inverse surface design: given a prescribed nonnegative radial
potential U and angular number mq, find the surface of revolution whose
effective potential satisfies W_mq = -U.

The construction runs through the amplitude

    A(rho) = 2 * int_{rho_ref}^{rho} sqrt(U + (mq^2 - 1/4)/rho'^2) drho'

and the slope df = |A|/sqrt(1 - A^2), which is real only while |A| < 1.
That confines every design to a circular strip around the axis: the
lower edge is where the integrand stops being real (mq = 0) or where
the amplitude crosses zero (mq >= 1), the upper edge is |A| = 1, where
the profile acquires a vertical tangent.

Closed forms for free motion (U = 0) and the harmonic well (U =
omega^2 rho^2) serve as oracles for the quadrature route and supply
the strip bounds directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import SurfaceProfile
from .numerics import MonotoneInterpolant, find_root_bracketed, \
    integrate_adaptive
from .potential import effective_potential

_AMPLITUDE_STOP = 1.0 - 1e-6


class AdmissibleRegionError(ValueError):
    """Raised when no real surface exists for the requested inputs."""


@dataclass(frozen=True)
class PrescribedPotential:
    """Target potential U(rho) >= 0, to be realized as W_mq = -U."""

    kind: str                       # 'free', 'harmonic', 'custom'
    omega: Optional[float] = None
    fn: Optional[Callable] = None
    domain: Optional[Tuple[float, float]] = None

    def evaluate(self, rho):
        if self.kind == "free":
            return np.zeros_like(np.asarray(rho, dtype=float)) \
                if np.ndim(rho) else 0.0
        if self.kind == "harmonic":
            return self.omega * self.omega * np.square(rho) \
                if np.ndim(rho) else self.omega ** 2 * rho * rho
        out = self.fn(rho)
        return out


def free_potential() -> PrescribedPotential:
    return PrescribedPotential(kind="free")


def harmonic_potential(omega: float) -> PrescribedPotential:
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    return PrescribedPotential(kind="harmonic", omega=float(omega))


def custom_potential(table, domain: Optional[Tuple[float, float]] = None
                     ) -> PrescribedPotential:
    """Custom target potential from a (rho, U) table or a callable.

    Tables get a monotone-cubic interpolant; callables need an explicit
    domain.  U must be nonnegative wherever it is sampled.
    """
    if callable(table):
        if domain is None:
            raise ValueError("callable potentials need an explicit domain")
        lo, hi = float(domain[0]), float(domain[1])
        if not 0.0 < lo < hi:
            raise ValueError("domain must satisfy 0 < lo < hi")
        probe = np.linspace(lo, hi, 64)
        if np.any(np.asarray([table(p) for p in probe]) < 0.0):
            raise ValueError("U must be nonnegative on its domain")
        return PrescribedPotential(kind="custom", fn=table, domain=(lo, hi))
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 2:
        raise ValueError("table must be (rho, U) pairs, at least 2 rows")
    if np.any(arr[:, 1] < 0.0):
        raise ValueError("U must be nonnegative")
    if np.any(arr[:, 0] <= 0.0):
        raise ValueError("table radii must be positive")
    itp = MonotoneInterpolant(arr[:, 0], arr[:, 1])
    lo, hi = float(arr[0, 0]), float(arr[-1, 0])
    return PrescribedPotential(kind="custom", fn=itp, domain=(lo, hi))


@dataclass(frozen=True)
class StripBounds:
    rho_lower: float
    rho_upper: float
    lower_criterion: str  # 'integrand_real_boundary' | 'amplitude_zero'
    upper_criterion: str  # 'amplitude_one' | 'amplitude_one_estimate'

    def __post_init__(self):
        if not 0.0 < self.rho_lower < self.rho_upper:
            raise ValueError("need 0 < rho_lower < rho_upper")


@dataclass(frozen=True)
class InverseDesign:
    potential: PrescribedPotential
    mq: int
    strip: StripBounds
    amplitude_table: List[Tuple[float, float]]
    profile_table: List[Tuple[float, float]]
    slope_table: List[Tuple[float, float]]
    sign_choice: Tuple[str, str]  # (profile sign, amplitude sign)
    amplitude_fn: Callable = field(repr=False, compare=False, default=None)


# ---------------------------------------------------------------------------
# integrand and amplitude

def _radicand(potential: PrescribedPotential, mq: int, rho: float) -> float:
    u = float(potential.evaluate(rho))
    return u + (mq * mq - 0.25) / (rho * rho)


def inverse_integrand(potential: PrescribedPotential, mq: int,
                      rho: float) -> float:
    """sqrt(U + (mq^2 - 1/4)/rho^2); the derivative of A/2."""
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if mq < 0:
        raise ValueError("mq must be nonnegative")
    rad = _radicand(potential, mq, rho)
    u = float(potential.evaluate(rho))
    scale = abs(u) + abs(mq * mq - 0.25) / (rho * rho) + 1e-300
    if rad < -1e-12 * scale:
        raise AdmissibleRegionError(
            "integrand not real at rho=%g (radicand %g < 0)" % (rho, rad))
    return math.sqrt(max(rad, 0.0))


def amplitude(potential: PrescribedPotential, mq: int, rho_ref: float,
              rho: float) -> float:
    """A(rho) = 2 int_{rho_ref}^{rho} integrand, by adaptive quadrature.

    When the radicand vanishes at the reference point (the mq = 0 inner
    boundary) the integrand has a square-root edge; substituting
    rho = ref + t^2 removes it before integrating.
    """
    rho_ref = float(rho_ref)
    rho = float(rho)
    if rho_ref <= 0.0 or rho <= 0.0:
        raise ValueError("radii must be positive")
    if rho == rho_ref:
        return 0.0
    lo, hi = (rho_ref, rho) if rho > rho_ref else (rho, rho_ref)
    sign = 1.0 if rho > rho_ref else -1.0

    rad_lo = _radicand(potential, mq, lo)
    rad_hi = _radicand(potential, mq, hi)
    if rad_lo < 0.0 and rad_lo < -1e-12 * (abs(rad_hi) + 1e-300):
        # probe through inverse_integrand for the standard error text
        inverse_integrand(potential, mq, lo)
    if rad_lo <= 1e-6 * (abs(rad_hi) + 1.0):
        span = math.sqrt(hi - lo)

        def g(t):
            return 2.0 * inverse_integrand(potential, mq, lo + t * t) \
                * 2.0 * t

        value = integrate_adaptive(g, 0.0, span, tol=1e-11).value
    else:
        value = integrate_adaptive(
            lambda r: 2.0 * inverse_integrand(potential, mq, r),
            lo, hi, tol=1e-11).value
    return sign * value


def harmonic_amplitude_closed_form(omega: float, mq: int,
                                   rho: float) -> float:
    """Exact amplitude for U = omega^2 rho^2 (quadrature oracle).

    mq = 0: A = (t - arctan t)/2 with t = sqrt(4 omega^2 rho^4 - 1),
    anchored at its real boundary rho0 = 1/sqrt(2 omega).  mq >= 1:
    A = r - c artanh(c/r), r = sqrt(omega^2 rho^4 + c^2),
    c = sqrt(mq^2 - 1/4); its zero marks the strip's lower edge.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if mq == 0:
        rho0 = 1.0 / math.sqrt(2.0 * omega)
        if rho < rho0 * (1.0 - 1e-12):
            raise ValueError("rho below the real boundary 1/sqrt(2 omega)")
        t = math.sqrt(max(4.0 * omega * omega * rho ** 4 - 1.0, 0.0))
        return 0.5 * (t - math.atan(t))
    c = math.sqrt(mq * mq - 0.25)
    r = math.sqrt(omega * omega * rho ** 4 + c * c)
    return r - c * math.atanh(c / r)


def _amplitude_closure(potential: PrescribedPotential, mq: int,
                       rho_ref: float):
    """Vectorized A(rho) anchored so A(rho_ref) = 0."""
    if potential.kind == "free":
        c_t = math.sqrt(4.0 * mq * mq - 1.0)

        def a_free(rho):
            return c_t * np.log(np.asarray(rho, dtype=float) / rho_ref)
        return a_free
    if potential.kind == "harmonic":
        omega = potential.omega
        if mq == 0:
            def a_h0(rho):
                t = np.sqrt(np.clip(
                    4.0 * omega * omega * np.power(rho, 4) - 1.0,
                    0.0, None))
                return 0.5 * (t - np.arctan(t))
            return a_h0
        c = math.sqrt(mq * mq - 0.25)
        offset = harmonic_amplitude_closed_form(omega, mq, rho_ref)

        def a_hm(rho):
            r = np.sqrt(omega * omega * np.power(rho, 4) + c * c)
            return r - c * np.arctanh(c / r) - offset
        return a_hm
    # custom: dense cumulative table + monotone interpolation
    lo, hi = potential.domain
    grid = np.linspace(rho_ref, hi, 4001)
    vals = np.empty(grid.size)
    vals[0] = 0.0
    for i in range(1, grid.size):
        vals[i] = vals[i - 1] + amplitude(potential, mq,
                                          float(grid[i - 1]),
                                          float(grid[i]))
    itp = MonotoneInterpolant(grid, vals)

    def a_c(rho):
        return itp(rho)
    return a_c


# ---------------------------------------------------------------------------
# strip bounds

def _expand_to_root(fn, lo, hi, target, hi_cap):
    """Grow [lo, hi] rightward until fn crosses target, then bisect."""
    f_lo = fn(lo) - target
    f_hi = fn(hi) - target
    tries = 0
    while f_lo * f_hi > 0.0:
        tries += 1
        hi = min(2.0 * hi, hi_cap)
        f_hi = fn(hi) - target
        if tries > 64 or (hi >= hi_cap and f_lo * f_hi > 0.0):
            raise AdmissibleRegionError(
                "no admissible region: level %g not reached" % target)
    return find_root_bracketed(lambda r: fn(r) - target, lo, hi,
                               tol=1e-12 * (1.0 + hi))


def strip_bounds(potential: PrescribedPotential, mq: int,
                 rho_ref: Optional[float] = None,
                 second_strip: bool = False) -> StripBounds:
    """Admissible radial strip for the design.

    free: (rho_ref, rho_ref e^(1/sqrt(4 mq^2 - 1))), closed form.
    harmonic mq >= 1: roots of the closed-form amplitude at 0 and 1.
    harmonic mq = 0: lower edge is the real boundary 1/sqrt(2 omega);
    the upper edge reported is the mean-value estimate
    5^(1/4)/sqrt(2 omega), which undershoots the true |A| = 1 point
    (near 1.85/sqrt(2 omega)) and is labeled accordingly.
    second_strip exposes the companion -1 < A < 0 band below the usual
    lower edge (mq >= 1 only).
    """
    if mq < 0:
        raise ValueError("mq must be nonnegative")

    if potential.kind == "free":
        if mq == 0:
            raise AdmissibleRegionError(
                "integrand not real anywhere for free motion at mq=0")
        rho0 = 1.0 if rho_ref is None else float(rho_ref)
        if rho0 <= 0.0:
            raise ValueError("rho_ref must be positive")
        stretch = math.exp(1.0 / math.sqrt(4.0 * mq * mq - 1.0))
        if second_strip:
            return StripBounds(rho0 / stretch, rho0,
                               "amplitude_one", "amplitude_zero")
        return StripBounds(rho0, rho0 * stretch,
                           "amplitude_zero", "amplitude_one")

    if potential.kind == "harmonic":
        omega = potential.omega
        scale = 1.0 / math.sqrt(2.0 * omega)
        if mq == 0:
            if second_strip:
                raise AdmissibleRegionError(
                    "no second strip at mq=0: the amplitude cannot "
                    "go negative")
            return StripBounds(scale, 5.0 ** 0.25 * scale,
                               "integrand_real_boundary",
                               "amplitude_one_estimate")
        fn = lambda r: harmonic_amplitude_closed_form(omega, mq, r)
        lower = _expand_to_root(fn, 1e-2 * scale, scale, 0.0, 1e6 * scale)
        if second_strip:
            inner = _expand_to_root(lambda r: -fn(r), 1e-2 * scale,
                                    1e-2 * scale * 2.0, 1.0, lower)
            return StripBounds(inner, lower,
                               "amplitude_one", "amplitude_zero")
        upper = _expand_to_root(fn, lower, 2.0 * lower, 1.0, 1e6 * scale)
        return StripBounds(lower, upper, "amplitude_zero", "amplitude_one")

    # custom potential
    lo, hi = potential.domain
    if mq == 0:
        probe = np.linspace(lo, hi, 512)
        rad = [_radicand(potential, 0, float(p)) for p in probe]
        idx = next((i for i in range(1, len(rad))
                    if rad[i - 1] < 0.0 <= rad[i]), None)
        if idx is None:
            if rad[0] >= 0.0:
                lower = lo
            else:
                raise AdmissibleRegionError(
                    "integrand not real anywhere in the domain")
        else:
            lower = find_root_bracketed(
                lambda r: _radicand(potential, 0, r),
                float(probe[idx - 1]), float(probe[idx]), tol=1e-12)
        crit = "integrand_real_boundary"
    else:
        if rho_ref is None:
            raise ValueError("custom potentials with mq >= 1 need rho_ref")
        lower = float(rho_ref)
        if not lo <= lower < hi:
            raise ValueError("rho_ref outside the potential domain")
        crit = "amplitude_zero"
    if second_strip:
        raise AdmissibleRegionError(
            "second strip not available for custom potentials")
    a_fn = _amplitude_closure(potential, mq, lower)
    top = float(a_fn(hi))
    if top < 1.0:
        raise AdmissibleRegionError(
            "|A| never reaches 1 inside the potential domain")
    upper = find_root_bracketed(lambda r: float(a_fn(r)) - 1.0,
                                lower, hi, tol=1e-12 * (1.0 + hi))
    return StripBounds(lower, upper, crit, "amplitude_one")


# ---------------------------------------------------------------------------
# profile construction

def design_profile(potential: PrescribedPotential, mq: int,
                   n_nodes: int = 400, rho_ref: Optional[float] = None,
                   sign_profile: str = "+",
                   sign_amplitude: str = "+") -> InverseDesign:
    """Tabulate the designed surface on its admissible strip.

    Nodes run from the lower strip edge (where f = 0 and df = 0 when
    the amplitude vanishes there) up to the point where |A| reaches
    1 - 1e-6; the vertical-tangent endpoint itself is excluded since
    df diverges.  The omitted height is O(sqrt(1 - A)).
    """
    if n_nodes < 10:
        raise ValueError("need at least 10 design nodes")
    if sign_profile not in ("+", "-") or sign_amplitude not in ("+", "-"):
        raise ValueError("sign choices must be '+' or '-'")
    strip = strip_bounds(potential, mq, rho_ref=rho_ref)
    a_fn = _amplitude_closure(potential, mq, strip.rho_lower)

    top_amp = float(a_fn(strip.rho_upper))
    if top_amp > _AMPLITUDE_STOP:
        stop = find_root_bracketed(
            lambda r: float(a_fn(r)) - _AMPLITUDE_STOP,
            strip.rho_lower, strip.rho_upper,
            tol=1e-13 * (1.0 + strip.rho_upper))
    else:
        stop = strip.rho_upper  # estimate-bounded strip: no singular edge

    rhos = np.linspace(strip.rho_lower, stop, n_nodes)
    amps = np.asarray(a_fn(rhos), dtype=float)
    amps = np.clip(amps, None, _AMPLITUDE_STOP)
    a_sign = 1.0 if sign_amplitude == "+" else -1.0
    f_sign = 1.0 if sign_profile == "+" else -1.0

    # Height integral in the angle variable A = sin(theta): the
    # 1/sqrt(1 - A^2) factor that makes the raw integrand blow up at
    # the strip's top cancels exactly, leaving sin(theta)/(2 g) with
    # g the inverse integrand, evaluated through a dense inverse map
    # rho(A).
    dense = np.linspace(strip.rho_lower, stop, 4001)
    a_dense = np.clip(np.abs(np.asarray(a_fn(dense), dtype=float)),
                      0.0, _AMPLITUDE_STOP)
    keep = np.concatenate(([True], np.diff(a_dense) > 0.0))
    rho_of_a = MonotoneInterpolant(a_dense[keep], dense[keep])
    a_top = float(a_dense[keep][-1])

    def height_integrand(th):
        a = min(math.sin(th), a_top)
        r = float(rho_of_a(a))
        g = math.sqrt(max(_radicand(potential, mq, r), 0.0))
        if g < 1e-300:
            return 0.0  # lower-edge limit: sin(theta) vanishes faster
        return math.sin(th) / (2.0 * g)

    thetas = np.arcsin(np.abs(amps))
    f_vals = np.zeros(n_nodes)
    for i in range(1, n_nodes):
        seg = integrate_adaptive(height_integrand, float(thetas[i - 1]),
                                 float(thetas[i]), tol=1e-11).value
        f_vals[i] = f_vals[i - 1] + seg
    slopes = np.abs(amps) / np.sqrt(1.0 - np.square(amps))

    wrapped = (lambda r: a_sign * np.asarray(a_fn(r), dtype=float)) \
        if a_sign < 0.0 else a_fn
    return InverseDesign(
        potential=potential, mq=int(mq), strip=strip,
        amplitude_table=list(zip(rhos.tolist(),
                                 (a_sign * amps).tolist())),
        profile_table=list(zip(rhos.tolist(), (f_sign * f_vals).tolist())),
        slope_table=list(zip(rhos.tolist(), (f_sign * slopes).tolist())),
        sign_choice=(sign_profile, sign_amplitude),
        amplitude_fn=wrapped)


def design_to_profile(design: InverseDesign) -> SurfaceProfile:
    """SurfaceProfile backed by the design's analytic slope.

    f interpolates the tabulated profile; df is the closed-form
    |A|/sqrt(1-A^2) (signed by the design's choice); d2f differentiates
    df with a step that shrinks near the strip's singular edge, where
    d2f itself blows up like (1-A^2)^(-3/2) but the curvature k1 stays
    finite through cancellation.
    """
    rhos = np.array([r for r, _ in design.profile_table])
    fs = np.array([v for _, v in design.profile_table])
    lo = float(rhos[0])
    hi = float(rhos[-1])
    f_itp = MonotoneInterpolant(rhos, fs) if np.all(np.diff(fs) > 0) \
        else None
    a_fn = design.amplitude_fn
    f_sign = 1.0 if design.sign_choice[0] == "+" else -1.0
    pot = design.potential
    mq = design.mq
    slack = 1e-12 * (1.0 + hi)

    def clipped(r):
        arr = np.asarray(r, dtype=float)
        if np.any(arr < lo - slack) or np.any(arr > hi + slack):
            raise ValueError("rho outside design strip [%g, %g]" % (lo, hi))
        return np.clip(arr, lo, hi)

    def f(r):
        arr = clipped(r)
        if f_itp is not None:
            out = f_itp(arr)
        else:
            out = np.interp(arr, rhos, fs)
        return out if np.ndim(r) else float(out)

    def df(r):
        arr = clipped(r)
        a = np.clip(np.abs(np.asarray(a_fn(arr), dtype=float)),
                    0.0, _AMPLITUDE_STOP)
        out = f_sign * a / np.sqrt(1.0 - np.square(a))
        return out if np.ndim(r) else float(out)

    def d2f_scalar(r):
        a = min(abs(float(a_fn(r))), _AMPLITUDE_STOP)
        eps = max(1.0 - a * a, 1e-9)
        # A' = 2 * integrand; controls how fast the slope steepens
        rad = max(_radicand(pot, mq, r), 0.0)
        a_rate = 2.0 * math.sqrt(rad)
        h = 1e-4 * eps / max(a_rate, 1e-9)
        h = min(max(h, 1e-12), 1e-3)
        edge = 0.49 * min(r - lo, hi - r)
        if edge > 0.0:
            h = min(h, edge)
            return (df(r + h) - df(r - h)) / (2.0 * h)
        # domain endpoint: fall back to a one-sided difference
        h = min(h, 1e-7 * (1.0 + hi))
        if r <= 0.5 * (lo + hi):
            return (df(r + h) - df(r)) / h
        return (df(r) - df(r - h)) / h

    def d2f(r):
        if np.ndim(r) == 0:
            return d2f_scalar(float(r))
        return np.array([d2f_scalar(float(v))
                         for v in np.asarray(r, dtype=float)])

    return SurfaceProfile(f, df, d2f, (lo, hi), "inverse_designed")


def round_trip_error(design: InverseDesign,
                     amplitude_cap: Optional[float] = None) -> float:
    """max |W_mq(rho) + U(rho)| / max(1, |U|) over interior design nodes.

    This is the defining identity of the construction; amplitude_cap
    restricts the check to nodes with |A| below the cap, away from the
    vertical-tangent edge where finite differences degrade.
    """
    if len(design.profile_table) < 10:
        raise ValueError("design too coarse for a round trip")
    prof = design_to_profile(design)
    worst = 0.0
    for (rho, a_val) in design.amplitude_table[1:-1]:
        if amplitude_cap is not None and abs(a_val) > amplitude_cap:
            continue
        u = float(design.potential.evaluate(rho))
        w = effective_potential(prof, design.mq, rho)
        err = abs(w + u) / max(1.0, abs(u))
        worst = max(worst, err)
    return worst


# ---------------------------------------------------------------------------
# free-motion closed forms

def free_profile_m0_slope(rho_over_rho0: float) -> float:
    """Slope |ln r|/sqrt(1 + ln^2 r) of the zero-angular-momentum free
    surface; 0 at r = 1, approaching 1 (a cone) as r grows."""
    r = float(rho_over_rho0)
    if r < 1.0:
        raise ValueError("defined for rho >= rho0")
    t = math.log(r)
    return abs(t) / math.sqrt(1.0 + t * t)


def free_profile_m0_figure3(rho_over_rho0_grid: Sequence[float]):
    """Tabulated free mq = 0 surface (dimensionless, heights over rho0).

    This is the analytic continuation of the design formula with
    |4 mq^2 - 1| = 1: no real surface solves the mq = 0 free problem,
    but the literal profile (cusp at rho0, cone far out) is still a
    well-defined curve, so it is excluded from round-trip validation.
    """
    grid = np.asarray(rho_over_rho0_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("grid must be a nonempty 1-d sequence")
    if np.any(grid < 1.0):
        raise ValueError("grid values must be >= 1")
    order = np.argsort(grid)
    sorted_grid = grid[order]
    heights = np.zeros(sorted_grid.size)
    prev_r = 1.0
    acc = 0.0
    for i, r in enumerate(sorted_grid):
        if r > prev_r:
            acc += integrate_adaptive(free_profile_m0_slope, prev_r,
                                      float(r), tol=1e-11).value
            prev_r = float(r)
        heights[i] = acc
    out = np.empty(grid.size)
    out[order] = heights
    return list(zip(grid.tolist(), out.tolist()))


def free_strip_arc_length(mq: int, rho0: float = 1.0) -> float:
    """Arc length of the full free strip, lower edge to |A| = 1.

    With A = sin(theta) the integral of 1/sqrt(1 - A^2) becomes
    (rho0/c) int_0^{pi/2} exp(sin(theta)/c) dtheta, c = sqrt(4mq^2-1),
    which is smooth; the raw form has an inverse-sqrt edge.
    """
    if mq < 1:
        raise ValueError("mq must be at least 1")
    if rho0 <= 0.0:
        raise ValueError("rho0 must be positive")
    c_t = math.sqrt(4.0 * mq * mq - 1.0)
    val = integrate_adaptive(
        lambda th: math.exp(math.sin(th) / c_t), 0.0, 0.5 * math.pi,
        tol=1e-12).value
    return rho0 / c_t * val


@dataclass(frozen=True)
class FreeStripBoxEnergies:
    """Closed-form vs. solver box energies on a free strip."""

    mq: int
    n: int
    rho0: float
    formula: float        # 4 pi^2 n^2 / (rho0 (e^(1/c) - 1))^2
    standard_box: float   # pi^2 n^2 / L^2 on the realized strip length
    dirichlet_box: float  # spectral solver on the designed strip
    x_length: float


def box_energies_on_free_strip(mq: int, rho0: float = 1.0, n: int = 1,
                               design_nodes: int = 300,
                               solver_nodes: int = 4000
                               ) -> FreeStripBoxEnergies:
    """Energy of the n-th state confined to the free strip.

    Reports the closed-form level formula next to an honest Dirichlet
    box: the strip is designed, its arc length L measured, and the
    x-space solver run on [0, L] with W supplied by the designed
    surface (zero up to round-trip error).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if mq < 1:
        raise ValueError("mq must be at least 1")
    from .geometry import build_arc_map
    from .spectral import solve_bound_states_x

    c_t = math.sqrt(4.0 * mq * mq - 1.0)
    width = rho0 * (math.exp(1.0 / c_t) - 1.0)
    formula = 4.0 * math.pi ** 2 * n * n / (width * width)

    design = design_profile(free_potential(), mq, n_nodes=design_nodes,
                            rho_ref=rho0)
    prof = design_to_profile(design)
    length = build_arc_map(prof).total
    sol = solve_bound_states_x(prof, mq, 0.0, length,
                               n_nodes=solver_nodes, n_states=n,
                               include_positive=True)
    standard = math.pi ** 2 * n * n / (length * length)
    return FreeStripBoxEnergies(
        mq=int(mq), n=int(n), rho0=float(rho0), formula=formula,
        standard_box=standard, dirichlet_box=float(sol.eigenvalues[n - 1]),
        x_length=float(length))
