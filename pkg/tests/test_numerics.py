"""Kernel tests: quadrature, roots, tridiagonal eigenpairs, Bessel,
monotone interpolation.  Reference values are frozen from independent
oracles (mpmath at 30 digits, Simpson refinement at h -> 0, closed
forms)."""
import math

import numpy as np
import pytest

from curvebound.numerics import (
    MonotoneInterpolant,
    QuadratureError,
    TridiagonalOperator,
    bessel,
    eigen_tridiagonal_lowest,
    find_root_bracketed,
    integrate_adaptive,
    interpolate_monotone,
)

# arc length of the unit gaussian bump from the axis to rho = 1,
# frozen from an h -> 0 Simpson refinement cross-checked at 30 digits
ARC_TO_ONE = 1.2044410708735521

K0_AT_ONE = 0.4210244382407083    # 30-digit series oracle
J1_FIRST_ZERO = 3.8317059702075123


# ---------------------------------------------------------------- quadrature

def test_quadrature_cubic_exact():
    r = integrate_adaptive(lambda x: x * x, 0.0, 1.0, tol=1e-10)
    assert abs(r.value - 1.0 / 3.0) <= 1e-10
    assert r.evaluations >= 5


def test_quadrature_sine():
    r = integrate_adaptive(math.sin, 0.0, math.pi, tol=1e-12)
    assert abs(r.value - 2.0) <= 1e-12


def test_quadrature_bump_arc_length():
    def speed(rho):
        return math.sqrt(1.0 + 4.0 * rho * rho * math.exp(-2.0 * rho * rho))
    r = integrate_adaptive(speed, 0.0, 1.0, tol=1e-12)
    assert abs(r.value - ARC_TO_ONE) <= 1e-11


def test_quadrature_linearity():
    # integrate(a*f + b*g) == a*integrate(f) + b*integrate(g) to 10*tol
    rng = np.random.default_rng(42)
    tol = 1e-10
    f = lambda x: math.exp(-x) * math.cos(3.0 * x)
    g = lambda x: 1.0 / (1.0 + x * x)
    i_f = integrate_adaptive(f, 0.0, 2.0, tol=tol).value
    i_g = integrate_adaptive(g, 0.0, 2.0, tol=tol).value
    for _ in range(25):
        a, b = rng.uniform(-5.0, 5.0, size=2)
        combined = integrate_adaptive(
            lambda x: a * f(x) + b * g(x), 0.0, 2.0, tol=tol).value
        assert abs(combined - (a * i_f + b * i_g)) <= 10.0 * tol * (
            1.0 + abs(a) + abs(b))


def test_quadrature_error_estimate_sane():
    r = integrate_adaptive(lambda x: math.exp(x), 0.0, 1.0, tol=1e-9)
    assert abs(r.value - (math.e - 1.0)) <= 1e-9
    assert r.error_estimate >= 0.0


def test_quadrature_rejects_bad_interval():
    with pytest.raises(ValueError):
        integrate_adaptive(math.sin, 1.0, 1.0)
    with pytest.raises(ValueError):
        integrate_adaptive(math.sin, 2.0, 1.0)
    with pytest.raises(ValueError):
        integrate_adaptive(math.sin, 0.0, 1.0, tol=0.0)


def test_quadrature_depth_cap_carries_partial():
    # inverse square root: integrable but not resolvable to 1e-14 by
    # panel bisection, so the depth cap has to trip
    def f(x):
        return x ** -0.5 if x > 0.0 else 0.0
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(f, 0.0, 1.0, tol=1e-14)
    partial = info.value.partial
    assert math.isfinite(partial.value)
    assert abs(partial.value - 2.0) < 1e-3
    assert partial.evaluations > 100


# -------------------------------------------------------------------- roots

def test_root_sqrt_two():
    r = find_root_bracketed(lambda x: x * x - 2.0, 1.0, 2.0, tol=1e-14)
    assert abs(r - math.sqrt(2.0)) <= 1e-12
    assert 1.0 <= r <= 2.0


def test_root_log():
    r = find_root_bracketed(math.log, 0.5, 2.0, tol=1e-13)
    assert abs(r - 1.0) <= 1e-12


def test_root_stays_in_bracket():
    rng = np.random.default_rng(3)
    for _ in range(30):
        c = rng.uniform(-0.8, 0.8)
        r = find_root_bracketed(lambda x, c=c: math.tanh(5.0 * (x - c)),
                                -1.0, 1.0, tol=1e-12)
        assert -1.0 <= r <= 1.0
        assert abs(r - c) <= 1e-10


def test_root_endpoint_hit():
    assert find_root_bracketed(lambda x: x, 0.0, 1.0) == 0.0


def test_root_requires_sign_change():
    with pytest.raises(ValueError):
        find_root_bracketed(lambda x: x * x + 1.0, -1.0, 1.0)


def test_root_bisection_fallback_on_kink():
    # derivative blows up at the root; secant steps alone would stall
    r = find_root_bracketed(
        lambda x: math.copysign(abs(x - 0.3) ** 0.2, x - 0.3),
        0.0, 1.0, tol=1e-13)
    assert abs(r - 0.3) <= 1e-12


# -------------------------------------------------------------- eigenpairs

def _laplacian_box(n, length):
    h = length / n
    d = np.full(n - 1, 2.0 / h ** 2)
    e = np.full(n - 2, -1.0 / h ** 2)
    return TridiagonalOperator(d, e)


def test_eigen_box_pi_squared():
    op = _laplacian_box(2000, 1.0)
    pairs = eigen_tridiagonal_lowest(op, 1)
    assert abs(pairs[0][0] - math.pi ** 2) <= 1e-3 * math.pi ** 2


def test_eigen_diagonal_passthrough():
    op = TridiagonalOperator([1.0, 2.0, 3.0], [0.0, 0.0])
    pairs = eigen_tridiagonal_lowest(op, 2)
    assert abs(pairs[0][0] - 1.0) <= 1e-12
    assert abs(pairs[1][0] - 2.0) <= 1e-12


def test_eigen_poschl_teller_ground_state():
    # -u'' - 2 sech^2(x) u = E u has a single bound state at E = -1
    n = 8000
    length = 40.0
    h = length / n
    xs = -20.0 + h * np.arange(1, n)
    d = 2.0 / h ** 2 - 2.0 / np.cosh(xs) ** 2
    e = np.full(n - 2, -1.0 / h ** 2)
    pairs = eigen_tridiagonal_lowest(TridiagonalOperator(d, e), 1)
    assert abs(pairs[0][0] + 1.0) <= 1e-3


def test_eigen_order_norm_residual():
    rng = np.random.default_rng(11)
    d = rng.normal(size=60)
    e = rng.normal(size=59)
    op = TridiagonalOperator(d, e)
    scale = np.max(np.abs(d)) + 2.0 * np.max(np.abs(e))
    pairs = eigen_tridiagonal_lowest(op, 5)
    vals = [v for v, _ in pairs]
    assert vals == sorted(vals)
    for val, vec in pairs:
        assert abs(np.linalg.norm(vec) - 1.0) <= 1e-12
        residual = np.linalg.norm(op.matvec(vec) - val * vec)
        assert residual <= 1e-8 * scale


def test_eigen_richardson_order():
    """Observed convergence order of the box ground state is >= 2."""
    errs = []
    for n in (250, 500, 1000):
        op = _laplacian_box(n, 1.0)
        errs.append(abs(eigen_tridiagonal_lowest(op, 1)[0][0] - math.pi ** 2))
    s1 = math.log2(errs[0] / errs[1])
    s2 = math.log2(errs[1] / errs[2])
    assert s1 >= 1.95
    assert s2 >= 1.95


def test_eigen_count_bounds():
    op = TridiagonalOperator([1.0, 2.0], [0.5])
    with pytest.raises(ValueError):
        eigen_tridiagonal_lowest(op, 0)
    with pytest.raises(ValueError):
        eigen_tridiagonal_lowest(op, 3)


def test_tridiagonal_shape_validation():
    with pytest.raises(ValueError):
        TridiagonalOperator([1.0], [])
    with pytest.raises(ValueError):
        TridiagonalOperator([1.0, 2.0, 3.0], [0.1])


# ------------------------------------------------------------------ bessel

def test_bessel_anchors():
    assert bessel("J", 0, 0.0) == 1.0
    assert bessel("J", 1, 0.0) == 0.0
    assert bessel("I", 0, 0.0) == 1.0
    assert abs(bessel("K", 0, 1.0) - K0_AT_ONE) <= 1e-12


def test_bessel_against_high_precision_oracle():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    ref = {"J": mp.besselj, "Y": mp.bessely, "I": mp.besseli,
           "K": mp.besselk}
    rng = np.random.default_rng(19)
    xs = np.concatenate([rng.uniform(1e-3, 50.0, 120),
                         [0.01, 0.5, 7.9, 8.0, 8.1, 12.9, 13.0, 13.1, 50.0]])
    for kind in "JYIK":
        for order in (0, 1):
            for x in xs:
                got = bessel(kind, order, float(x))
                want = float(ref[kind](order, mp.mpf(float(x))))
                assert abs(got - want) <= 1e-10 * max(1.0, abs(want)), \
                    (kind, order, x)


def test_bessel_higher_orders():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    for n in (2, 3, 7, 12):
        for x in (0.2, 1.0, 6.0, 13.0, 29.0, 48.0):
            assert abs(bessel("J", n, x) - float(mp.besselj(n, x))) \
                <= 1e-10 * max(1.0, abs(float(mp.besselj(n, x))))
            assert abs(bessel("Y", n, x) - float(mp.bessely(n, x))) \
                <= 1e-10 * max(1.0, abs(float(mp.bessely(n, x))))


def test_bessel_wronskians():
    # I0 K1 + I1 K0 = 1/x and J0 Y1 - J1 Y0 = -2/(pi x)
    for x in np.geomspace(0.05, 50.0, 40):
        x = float(x)
        w_ik = bessel("I", 0, x) * bessel("K", 1, x) \
            + bessel("I", 1, x) * bessel("K", 0, x)
        assert abs(w_ik - 1.0 / x) <= 1e-9 * max(1.0, 1.0 / x)
        w_jy = bessel("J", 0, x) * bessel("Y", 1, x) \
            - bessel("J", 1, x) * bessel("Y", 0, x)
        assert abs(w_jy + 2.0 / (math.pi * x)) <= 1e-9 * max(1.0, 1.0 / x)


def test_bessel_domain_errors():
    with pytest.raises(ValueError):
        bessel("Y", 0, 0.0)
    with pytest.raises(ValueError):
        bessel("K", 1, -2.0)
    with pytest.raises(ValueError):
        bessel("J", 0, -1.0)
    with pytest.raises(ValueError):
        bessel("Q", 0, 1.0)
    with pytest.raises(ValueError):
        bessel("J", -1, 1.0)
    with pytest.raises(ValueError):
        bessel("K", 2, 1.0)


def test_bessel_j1_zero_bracketed():
    r = find_root_bracketed(lambda x: bessel("J", 1, x), 3.0, 4.5, tol=1e-13)
    assert abs(r - J1_FIRST_ZERO) <= 1e-11


# ----------------------------------------------------------- interpolation

def test_interpolate_linear_data():
    assert abs(interpolate_monotone([(0.0, 0.0), (1.0, 1.0)], 0.5) - 0.5) \
        <= 1e-14


def test_interpolate_exact_at_nodes():
    xs = np.linspace(0.0, 2.0, 17)
    ys = np.sin(xs) + 2.0
    itp = MonotoneInterpolant(xs, ys)
    for x, y in zip(xs, ys):
        assert itp(float(x)) == y


def test_interpolate_inverts_arc_length():
    # tabulate x(rho) for the unit bump, then query the frozen arc
    # value and expect to land back at rho = 1
    def speed(rho):
        return math.sqrt(1.0 + 4.0 * rho * rho * math.exp(-2.0 * rho * rho))
    rhos = np.linspace(0.0, 2.0, 2001)
    xs = np.zeros_like(rhos)
    for i in range(1, rhos.size):
        xs[i] = xs[i - 1] + integrate_adaptive(
            speed, float(rhos[i - 1]), float(rhos[i]), tol=1e-12).value
    back = MonotoneInterpolant(xs, rhos)(ARC_TO_ONE)
    assert abs(back - 1.0) <= 1e-6


def test_interpolate_no_overshoot():
    rng = np.random.default_rng(8)
    for _ in range(20):
        xs = np.sort(rng.uniform(0.0, 10.0, 12))
        xs += np.arange(12) * 1e-3  # enforce strict increase
        ys = np.cumsum(rng.uniform(0.0, 1.0, 12))
        itp = MonotoneInterpolant(xs, ys)
        for j in range(11):
            q = np.linspace(xs[j], xs[j + 1], 9)
            vals = itp(q)
            lo, hi = min(ys[j], ys[j + 1]), max(ys[j], ys[j + 1])
            assert np.all(vals >= lo - 1e-12)
            assert np.all(vals <= hi + 1e-12)


def test_interpolate_rejects_extrapolation():
    itp = MonotoneInterpolant([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
    with pytest.raises(ValueError):
        itp(2.5)
    with pytest.raises(ValueError):
        itp(-0.1)


def test_interpolate_input_validation():
    with pytest.raises(ValueError):
        MonotoneInterpolant([0.0], [1.0])
    with pytest.raises(ValueError):
        MonotoneInterpolant([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        interpolate_monotone([(0.0, 1.0, 2.0)], 0.5)
