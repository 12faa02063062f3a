"""Acceptance suite: one checked claim per numbered criterion.

Each criterion prints a [PASS] or [FAIL] line (run with -s, the
default here) and fails the test on a miss.  Criterion 5 is split:
its cross-solver clause fails by construction on the dented disk, see
the docstring there, and is kept red rather than weakened.
"""
import contextlib
import dataclasses
import io
import json
import math
import os
import time

import numpy as np
import pytest
from scipy.integrate import simpson

import curvebound as cb
from curvebound.cli import main as cli_main
from curvebound.inverse import box_energies_on_free_strip
from curvebound.numerics import TridiagonalOperator, bessel, \
    eigen_tridiagonal_lowest


@contextlib.contextmanager
def check(num, label):
    try:
        yield
    except AssertionError as exc:
        first = str(exc).splitlines()[0] if str(exc) else ""
        print("[FAIL] criterion %s: %s :: %s" % (num, label, first))
        raise
    print("[PASS] criterion %s: %s" % (num, label))


def run_cli(args, cwd):
    old = os.getcwd()
    os.chdir(str(cwd))
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            code = cli_main(args)
    finally:
        os.chdir(old)
    return code, json.loads(buf.getvalue())


def test_criterion_01_harmonic_strips(tmp_path):
    with check(1, "harmonic strip bounds, mq=1..3, under 1 s"):
        want = {1: (1.071, 1.602), 2: (1.602, 1.957), 3: (1.980, 2.265)}
        t0 = time.perf_counter()
        scale = math.sqrt(2.0 * 0.5)  # report in sqrt(2 omega) rho units
        for mq, (lo, hi) in want.items():
            code, out = run_cli(["strip", "--potential", "harmonic",
                                 "--omega", "0.5", "--mq", str(mq)],
                                tmp_path)
            assert code == 0
            strip = out["strip"]
            assert strip["rho_lower"] * scale == pytest.approx(lo,
                                                               abs=3e-3)
            assert strip["rho_upper"] * scale == pytest.approx(hi,
                                                               abs=3e-3)
        elapsed = time.perf_counter() - t0
        assert elapsed < 1.0, "took %.2f s" % elapsed


def test_criterion_02_harmonic_mq0_strip():
    with check(2, "harmonic mq=0 bounds: exact lower, estimate upper"):
        for omega in (0.5, 1.25):
            s = cb.strip_bounds(cb.harmonic_potential(omega), 0)
            scale = 1.0 / math.sqrt(2.0 * omega)
            assert s.rho_lower == scale  # exact, not approximate
            assert s.rho_upper == pytest.approx(5.0 ** 0.25 * scale,
                                                abs=0.01)


def test_criterion_03_free_strip_extent():
    with check(3, "free strip ratios e^(1/sqrt(3)), e^(1/sqrt(15))"):
        for mq, want in ((1, 1.7813121741), (2, 1.2945962749)):
            s = cb.strip_bounds(cb.free_potential(), mq, rho_ref=1.0)
            assert s.rho_upper / s.rho_lower == pytest.approx(want,
                                                              abs=1e-3)


def test_criterion_04_round_trip_identity():
    with check(4, "design round trip: harmonic 1e-4, free 1e-6"):
        pot = cb.harmonic_potential(0.5)
        for mq in (1, 2):
            design = cb.design_profile(pot, mq, n_nodes=300)
            err = cb.round_trip_error(design, amplitude_cap=0.99)
            assert err <= 1e-4, "harmonic mq=%d err %.3e" % (mq, err)
        free = cb.design_profile(cb.free_potential(), 1, n_nodes=300,
                                 rho_ref=1.0)
        err = cb.round_trip_error(free)
        assert err <= 1e-6, "free err %.3e" % err


def test_criterion_05a_bound_state_and_stability(bump, solved_m0):
    with check("5a", "unit dent: one bound state in the window, "
                     "stable under doubling, none at mq=1,2"):
        sol = solved_m0
        assert sol.bound_count >= 1
        e0 = sol.eigenvalues[0]
        floor = min(cb.surface_potential(bump, float(r))
                    for r in np.linspace(0.5, 2.0, 2001))
        assert floor - 1e-3 <= e0 < 0.0
        # doubling both the wall and the node count moves E0 < 1%
        refined = cb.solve_bound_states_rho(
            bump, 0, rho_max=2.0 * sol.grid_rho[-1],
            n_nodes=2 * (len(sol.grid_rho) - 1), auto_expand=False)
        drift = abs(refined.eigenvalues[0] - e0) / abs(e0)
        assert drift < 0.01, "drift %.3f" % drift
        for mq in (1, 2):
            assert cb.solve_bound_states_rho(bump, mq).bound_count == 0


def test_criterion_05b_cross_solver_agreement(bump, solved_m0):
    """Arc-length solver with a near-axis cutoff vs the radial solver.

    KNOWN RED.  The radial operator at mq = 0 admits a regular-axis
    condition; the arc-length form replaces the axis by a Dirichlet
    cutoff at small x > 0.  The attractive -1/(4x^2) tail makes the
    cutoff choice a boundary-condition choice (both endpoint solutions
    are square integrable), and a Dirichlet wall at x = 1e-3 yields a
    level around -9e-5, nowhere near the regular-axis -2.9e-3.  The
    5 percent agreement demanded here is not achievable with the
    contracted Dirichlet scheme; the discrepancy is reported, not
    hidden.
    """
    with check("5b", "x-space solver matches rho-space within 5%"):
        e0 = solved_m0.eigenvalues[0]
        amap = cb.build_arc_map(bump)
        cut = cb.solve_bound_states_x(bump, 0, 1e-3, amap.total,
                                      n_nodes=8000)
        assert cut.bound_count >= 1
        ex = cut.eigenvalues[0]
        rel = abs(ex - e0) / abs(e0)
        assert rel <= 0.05, (
            "cutoff Dirichlet level %.6e vs regular-axis %.6e, "
            "rel diff %.1f%%" % (ex, e0, 100.0 * rel))


def test_criterion_06_ansatz_density(bump):
    with check(6, "ansatz density: zero at axis, unimodal, normalized"):
        state = cb.ansatz_wavefunction(bump, 5.0)
        d = state.density
        assert d[0] == 0.0
        peak = int(np.argmax(d))
        assert peak > 0
        assert np.all(np.diff(d[:peak + 1]) >= 0.0)
        assert np.all(np.diff(d[peak:]) <= 0.0)
        total = 2.0 * math.pi * simpson(d, x=state.grid_rho)
        assert abs(total - 1.0) <= 1e-6, "integral %.8f" % total


def test_criterion_07_figure3_slopes():
    with check(7, "free mq=0 profile slopes: 0, 3/sqrt(10), cone limit"):
        assert cb.free_profile_m0_slope(1.0) == 0.0
        assert cb.free_profile_m0_slope(math.e ** 3) == pytest.approx(
            3.0 / math.sqrt(10.0), abs=1e-3)
        grid = np.geomspace(1.0, 200.0, 120)
        slopes = [cb.free_profile_m0_slope(float(r)) for r in grid]
        assert all(b >= a for a, b in zip(slopes, slopes[1:]))
        assert slopes[-1] < 1.0
        assert 1.0 - slopes[-1] < 0.02  # approaching the cone


def test_criterion_08_reference_problems():
    with check(8, "boxes, Poschl-Teller, Bessel values, Wronskians"):
        # Dirichlet box on the designed free strip, n = 1..3
        for n in (1, 2, 3):
            out = box_energies_on_free_strip(1, n=n)
            rel = abs(out.dirichlet_box - out.standard_box) \
                / out.standard_box
            assert rel <= 1e-3, "box n=%d rel %.2e" % (n, rel)

        # Poschl-Teller -2 sech^2 ground level
        nn = 8000
        xs = np.linspace(-20.0, 20.0, nn + 1)[1:-1]
        h = xs[1] - xs[0]
        diag = 2.0 / h ** 2 - 2.0 / np.cosh(xs) ** 2
        off = np.full(xs.size - 1, -1.0 / h ** 2)
        pairs = eigen_tridiagonal_lowest(
            TridiagonalOperator(tuple(diag), tuple(off)), 1)
        assert pairs[0][0] == pytest.approx(-1.0, abs=1e-3)

        # Bessel sweep against mpmath, absolute or relative 1e-10
        import mpmath
        mp_fn = {"J": mpmath.besselj, "Y": mpmath.bessely,
                 "I": mpmath.besseli, "K": mpmath.besselk}
        rng = np.random.default_rng(47)
        xs_b = np.concatenate([rng.uniform(0.02, 50.0, 40),
                               [7.9, 8.1, 12.9, 13.1]])
        for kind in ("J", "Y", "I", "K"):
            for order in (0, 1):
                for x in xs_b:
                    got = bessel(kind, order, float(x))
                    ref = float(mp_fn[kind](order, mpmath.mpf(float(x))))
                    err = abs(got - ref) / max(1.0, abs(ref))
                    assert err < 1e-10, \
                        "%s_%d(%.4f) err %.2e" % (kind, order, x, err)

        # Wronskian identities tie the families together
        for x in np.geomspace(0.05, 50.0, 40):
            x = float(x)
            wjy = bessel("J", 1, x) * bessel("Y", 0, x) \
                - bessel("J", 0, x) * bessel("Y", 1, x)
            assert abs(wjy - 2.0 / (math.pi * x)) \
                <= 1e-9 * max(1.0, 2.0 / (math.pi * x))
            wik = bessel("I", 0, x) * bessel("K", 1, x) \
                + bessel("I", 1, x) * bessel("K", 0, x)
            assert abs(wik - 1.0 / x) <= 1e-9 * max(1.0, 1.0 / x)


def test_criterion_09_currents(solved_m0):
    with check(9, "circulation linear in mq to 1e-12, j_rho zero"):
        psi_sq = np.abs(solved_m0.wavefunctions[0].psi) ** 2
        base = cb.probability_current(
            dataclasses.replace(solved_m0, mq=1), 0)
        assert np.allclose(base.circulation, 4.0 * math.pi * psi_sq,
                           rtol=1e-13, atol=0.0)
        for mq in (2, 3, 7):
            cur = cb.probability_current(
                dataclasses.replace(solved_m0, mq=mq), 0)
            mask = base.circulation > 0.0
            ratio = cur.circulation[mask] / base.circulation[mask]
            assert float(np.max(np.abs(ratio - mq))) < 1e-12
            assert all(jr == 0.0 for _, _, jr in cur.nodes)


def test_criterion_10_report_depth_scale(tmp_path):
    with check(10, "spectrum report carries the -a0^2/sigma0^4 scale"):
        code, out = run_cli(["spectrum", "--surface", "gaussian",
                             "--a0", "1", "--sigma0", "1", "--mq", "0",
                             "--states", "1"], tmp_path)
        assert code == 0
        m = out["metrics"]
        # both numbers present side by side; their disagreement is a
        # physics statement and deliberately not asserted
        assert "e0" in m
        assert m["near_origin_depth"] == -1.0
