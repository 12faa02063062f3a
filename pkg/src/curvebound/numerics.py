"""Numerical kernels: adaptive quadrature, bracketed root finding,
symmetric-tridiagonal eigenpairs, Bessel functions, and monotone
interpolation.

Everything is deterministic and stateless.  The physics modules are built
on top of these primitives, so tolerances here are tighter than anything
the callers promise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.linalg import eigh_tridiagonal


# ---------------------------------------------------------------------------
# quadrature

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int


class QuadratureError(RuntimeError):
    """Adaptive refinement hit the subdivision cap.

    The best available estimate is kept in ``partial`` so callers can
    decide whether the unconverged answer is still usable.
    """

    def __init__(self, message: str, partial: QuadratureResult):
        super().__init__(message)
        self.partial = partial


_MAX_DEPTH = 60


def integrate_adaptive(fn: Callable[[float], float], a: float, b: float,
                       tol: float = 1e-10) -> QuadratureResult:
    """Adaptive Simpson integration of fn over [a, b].

    The target is |value - true| <= max(tol, tol*|value|) for smooth
    integrands; the relative part is seeded from a coarse whole-interval
    estimate so wildly scaled integrands do not get starved.  Panels that
    fail to settle within 60 bisections abort with QuadratureError.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError("integration requires a < b")
    if tol <= 0.0:
        raise ValueError("tol must be positive")

    neval = 0

    def f(x: float) -> float:
        nonlocal neval
        neval += 1
        return float(fn(x))

    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    budget = max(tol, tol * abs(whole))

    # stack entries: panel ends, cached values, Simpson estimate,
    # error budget for the panel, depth
    stack = [(a, b, fa, fm, fb, whole, budget, 0)]
    total = 0.0
    err_total = 0.0
    failed_on = None
    while stack:
        x0, x1, f0, f1, f2, s, eps, depth = stack.pop()
        xm = 0.5 * (x0 + x1)
        fl = f(0.5 * (x0 + xm))
        fr = f(0.5 * (xm + x1))
        h12 = (x1 - x0) / 12.0
        left = h12 * (f0 + 4.0 * fl + f1)
        right = h12 * (f1 + 4.0 * fr + f2)
        s2 = left + right
        delta = s2 - s
        if math.isfinite(delta) and abs(delta) <= 15.0 * eps:
            # one Richardson step on the accepted panel
            total += s2 + delta / 15.0
            err_total += abs(delta) / 15.0
        elif depth >= _MAX_DEPTH:
            total += s2 if math.isfinite(s2) else 0.0
            err_total += abs(delta) if math.isfinite(delta) else math.inf
            if failed_on is None:
                failed_on = (x0, x1)
        else:
            half = 0.5 * eps
            stack.append((x0, xm, f0, fl, f1, left, half, depth + 1))
            stack.append((xm, x1, f1, fr, f2, right, half, depth + 1))

    result = QuadratureResult(total, err_total, neval)
    if failed_on is not None:
        raise QuadratureError(
            "no convergence after %d subdivisions near [%g, %g]"
            % (_MAX_DEPTH, failed_on[0], failed_on[1]), result)
    return result


# ---------------------------------------------------------------------------
# root finding

def find_root_bracketed(fn: Callable[[float], float], lo: float, hi: float,
                        tol: float = 1e-12) -> float:
    """Brent's method on a sign-changing bracket.

    Inverse-quadratic / secant steps with a bisection safeguard, so
    convergence is guaranteed for any continuous fn.  Returns a point
    inside [lo, hi] with final bracket width <= tol (up to rounding).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    a = float(lo)
    b = float(hi)
    fa = float(fn(a))
    fb = float(fn(b))
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError("no sign change on [%g, %g]" % (lo, hi))

    c, fc = a, fa
    d = e = b - a
    eps = np.finfo(float).eps
    for _ in range(300):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * eps * abs(b) + 0.5 * tol
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += tol1 if xm > 0.0 else -tol1
        fb = float(fn(b))
    return b


# ---------------------------------------------------------------------------
# tridiagonal eigenpairs

@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix, stored as diagonal + off-diagonal."""

    diagonal: np.ndarray
    off_diagonal: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diagonal, dtype=float)
        e = np.asarray(self.off_diagonal, dtype=float)
        if d.ndim != 1 or e.ndim != 1:
            raise ValueError("diagonal and off_diagonal must be 1-d")
        if d.size < 2:
            raise ValueError("operator needs at least 2 rows")
        if e.size != d.size - 1:
            raise ValueError("off_diagonal must have length n-1")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("matrix entries must be finite")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "off_diagonal", e)

    @property
    def size(self) -> int:
        return self.diagonal.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out


def eigen_tridiagonal_lowest(op: TridiagonalOperator, count: int):
    """The `count` algebraically smallest eigenpairs of a symmetric
    tridiagonal operator, eigenvalues nondecreasing, eigenvectors with
    unit Euclidean norm.

    Backed by LAPACK's bisection (Sturm sequence) eigenvalue search plus
    inverse iteration for the vectors, which is exactly the few-lowest-
    of-many access pattern the solvers need.  Vector signs are fixed
    deterministically: the largest-magnitude component is made positive.
    """
    if count < 1 or count > op.size:
        raise ValueError("count must be in [1, n]")
    vals, vecs = eigh_tridiagonal(op.diagonal, op.off_diagonal,
                                  select="i", select_range=(0, count - 1))
    pairs = []
    for j in range(count):
        v = vecs[:, j].copy()
        k = int(np.argmax(np.abs(v)))
        if v[k] < 0.0:
            v = -v
        nrm = float(np.linalg.norm(v))
        if nrm > 0.0:
            v /= nrm
        pairs.append((float(vals[j]), v))
    return pairs


# ---------------------------------------------------------------------------
# Bessel functions
#
# Two-regime evaluation: power series for small argument, Hankel
# asymptotic expansion for large.  The J/Y switch sits at x = 13, where
# both branches carry roughly 1e-12 absolute error in double precision
# (the series loses digits to cancellation as x grows, the asymptotic
# minimum term shrinks like e^(-2x)).  K flips at x = 8 from its series,
# which cancels catastrophically beyond that, to a rescaled integral
# representation evaluated with the adaptive quadrature above.  I is a
# positive-term series everywhere, so it never cancels.

_EULER_GAMMA = 0.5772156649015328606
_JY_SWITCH = 13.0
_K_SWITCH = 8.0


def _j0_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    for k in range(1, 200):
        term *= -q / (k * k)
        s += term
        if abs(term) < 1e-18 * abs(s) + 1e-300:
            break
    return s


def _j1_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    for k in range(1, 200):
        term *= -q / (k * (k + 1))
        s += term
        if abs(term) < 1e-18 * abs(s) + 1e-300:
            break
    return 0.5 * x * s


def _y0_series(x: float) -> float:
    q = 0.25 * x * x
    # sum_{k>=1} (-1)^(k+1) H_k q^k / (k!)^2
    term = 1.0
    h = 0.0
    s = 0.0
    for k in range(1, 200):
        term *= q / (k * k)
        h += 1.0 / k
        contrib = term * h if k % 2 == 1 else -term * h
        s += contrib
        if abs(term * h) < 1e-18 * (abs(s) + 1.0):
            break
    return (2.0 / math.pi) * ((math.log(0.5 * x) + _EULER_GAMMA)
                              * _j0_series(x) + s)


def _y1_series(x: float) -> float:
    q = 0.25 * x * x
    # sum_k (-1)^k (H_k + H_{k+1}) (x/2)^(2k+1) / (k! (k+1)!)
    term = 0.5 * x
    hk = 0.0
    hk1 = 1.0
    s = term * (hk + hk1)
    sign = -1.0
    for k in range(1, 200):
        term *= q / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        s += sign * term * (hk + hk1)
        sign = -sign
        if term * (hk + hk1) < 1e-18 * (abs(s) + 1.0):
            break
    return (2.0 / math.pi) * (math.log(0.5 * x) + _EULER_GAMMA) \
        * _j1_series(x) - 2.0 / (math.pi * x) - s / math.pi


def _jy_asymptotic(n: int, x: float):
    """(J_n, Y_n) from the large-argument modulus/phase expansion."""
    mu = 4.0 * n * n
    p = 1.0
    q = 0.0
    t = 1.0
    sign_p = -1.0
    sign_q = 1.0
    for m in range(1, 40):
        t_next = t * (mu - (2.0 * m - 1.0) ** 2) / (8.0 * m * x)
        if abs(t_next) >= abs(t):
            break  # asymptotic tail started growing, stop at the minimum
        t = t_next
        if m % 2 == 1:
            q += sign_q * t
            sign_q = -sign_q
        else:
            p += sign_p * t
            sign_p = -sign_p
        if abs(t) < 1e-18:
            break
    chi = x - (0.5 * n + 0.25) * math.pi
    pref = math.sqrt(2.0 / (math.pi * x))
    c = math.cos(chi)
    s = math.sin(chi)
    return pref * (p * c - q * s), pref * (p * s + q * c)


def _i_series(n: int, x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    for k in range(1, 400):
        term *= q / (k * (k + n))
        s += term
        if term < 1e-18 * s:
            break
    if n == 0:
        return s
    return 0.5 * x * s


def _k0_series(x: float) -> float:
    q = 0.25 * x * x
    term = 1.0
    h = 0.0
    s = 0.0
    for k in range(1, 200):
        term *= q / (k * k)
        h += 1.0 / k
        s += term * h
        if term * h < 1e-18 * (s + 1.0):
            break
    return -(math.log(0.5 * x) + _EULER_GAMMA) * _i_series(0, x) + s


def _k1_series(x: float) -> float:
    q = 0.25 * x * x
    # sum_k (H_k + H_{k+1} - 2*gamma) q^k / (k! (k+1)!), leading k = 0
    term = 1.0
    hk = 0.0
    hk1 = 1.0
    s = hk + hk1 - 2.0 * _EULER_GAMMA
    for k in range(1, 200):
        term *= q / (k * (k + 1))
        hk += 1.0 / k
        hk1 += 1.0 / (k + 1)
        s += term * (hk + hk1 - 2.0 * _EULER_GAMMA)
        if term * (hk + hk1) < 1e-18 * (abs(s) + 1.0):
            break
    return 1.0 / x + math.log(0.5 * x) * _i_series(1, x) - 0.25 * x * s


def _k_integral(n: int, x: float) -> float:
    # K_n(x) = e^-x * int_0^inf e^{-x(cosh t - 1)} cosh(nt) dt; the
    # rescaling keeps the integrand O(1) so absolute quadrature control
    # gives relative accuracy in K.
    t_max = math.acosh(1.0 + 45.0 / x)

    def integrand(t: float) -> float:
        return math.exp(-x * (math.cosh(t) - 1.0)) * math.cosh(n * t)

    r = integrate_adaptive(integrand, 0.0, t_max, tol=1e-13)
    return math.exp(-x) * r.value


def _jn_miller(n: int, x: float) -> float:
    """J_n for n >= 2 by downward recurrence with even-order
    normalization (J_0 + 2*sum J_2k = 1)."""
    if x == 0.0:
        return 0.0
    top = max(n, x)
    m = int(top + 18 + 12.0 * top ** (1.0 / 3.0))
    if m % 2 == 1:
        m += 1
    bp = 0.0
    bc = 1e-30
    norm = 0.0
    target = 0.0
    for k in range(m, 0, -1):
        bn = (2.0 * k / x) * bc - bp
        bp = bc
        bc = bn
        if k - 1 == n:
            target = bc
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * bc
        if abs(bc) > 1e250:  # rescale to dodge overflow
            bc *= 1e-250
            bp *= 1e-250
            norm *= 1e-250
            target *= 1e-250
    norm += bc  # k-1 == 0 contribution is bc itself after the loop
    return target / norm


def bessel(kind: str, order: int, x: float) -> float:
    """Bessel function of integer order.

    kind is one of 'J', 'Y', 'I', 'K'.  Orders 0 and 1 are supported for
    all four kinds, general nonnegative integer order for J and Y.
    Domain: x > 0 for Y and K, x >= 0 for J and I.
    """
    if kind not in ("J", "Y", "I", "K"):
        raise ValueError("kind must be one of J, Y, I, K")
    try:
        n = int(order)
    except (TypeError, ValueError):
        raise ValueError("order must be a nonnegative integer") from None
    if n != order or n < 0:
        raise ValueError("order must be a nonnegative integer")
    x = float(x)
    if kind in ("Y", "K") and x <= 0.0:
        raise ValueError("%s requires x > 0" % kind)
    if x < 0.0:
        raise ValueError("x must be nonnegative")

    if kind == "J":
        if x == 0.0:
            return 1.0 if n == 0 else 0.0
        if n <= 1:
            if x <= _JY_SWITCH:
                return _j0_series(x) if n == 0 else _j1_series(x)
            return _jy_asymptotic(n, x)[0]
        return _jn_miller(n, x)

    if kind == "Y":
        if n <= 1:
            if x <= _JY_SWITCH:
                return _y0_series(x) if n == 0 else _y1_series(x)
            return _jy_asymptotic(n, x)[1]
        # upward recurrence rides the dominant solution, always stable
        ym, yc = bessel("Y", 0, x), bessel("Y", 1, x)
        for k in range(1, n):
            ym, yc = yc, (2.0 * k / x) * yc - ym
        return yc

    if kind == "I":
        if n > 1:
            raise ValueError("I supports orders 0 and 1 only")
        if x == 0.0:
            return 1.0 if n == 0 else 0.0
        return _i_series(n, x)

    if n > 1:
        raise ValueError("K supports orders 0 and 1 only")
    if x < _K_SWITCH:
        return _k0_series(x) if n == 0 else _k1_series(x)
    return _k_integral(n, x)


# ---------------------------------------------------------------------------
# monotone interpolation

class MonotoneInterpolant:
    """Shape-preserving cubic interpolant (PCHIP), no extrapolation.

    Exact at the nodes and never overshoots the bracketing node values.
    Queries a hair outside the table (within 1e-12 relative) are clipped
    so that round-off at the endpoints does not trip the range check.
    """

    def __init__(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or xs.size < 2 or ys.shape != xs.shape:
            raise ValueError("need two matching 1-d arrays with >= 2 nodes")
        if not np.all(np.diff(xs) > 0.0):
            raise ValueError("table abscissae must be strictly increasing")
        self._lo = float(xs[0])
        self._hi = float(xs[-1])
        self._slack = 1e-12 * (1.0 + max(abs(self._lo), abs(self._hi)))
        self._p = PchipInterpolator(xs, ys, extrapolate=False)

    def _clip(self, q):
        arr = np.asarray(q, dtype=float)
        if np.any(arr < self._lo - self._slack) or \
                np.any(arr > self._hi + self._slack):
            raise ValueError("query outside table range [%g, %g]"
                             % (self._lo, self._hi))
        return np.clip(arr, self._lo, self._hi)

    def __call__(self, q):
        arr = self._clip(q)
        out = self._p(arr)
        if np.isscalar(q) or np.asarray(q).ndim == 0:
            return float(out)
        return out

    def derivative(self, q):
        arr = self._clip(q)
        out = self._p.derivative()(arr)
        if np.isscalar(q) or np.asarray(q).ndim == 0:
            return float(out)
        return out


def interpolate_monotone(table: Sequence, query: float) -> float:
    """One-shot monotone interpolation of a (x, y) table at query."""
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("table must be a sequence of (x, y) pairs")
    return MonotoneInterpolant(arr[:, 0], arr[:, 1])(query)
