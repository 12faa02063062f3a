"""Radial spectral solvers for a particle confined to a surface of
revolution, plus analytic approximations (bound-state ansatz, WKB and
Bessel continuum forms), probability densities and currents.

Two independent discretizations of the same spectral problem:

* rho-space (primary): the Sturm-Liouville form with weight sqrt(g),
  regular at the axis for mq = 0, so no inner cutoff is needed.
* x-space: the Liouville normal form -F'' + W F = k^2 F in arc length,
  with Dirichlet ends.  Near the axis W carries the -1/(4x^2) term,
  which makes the operator limit-circle at x = 0; a small inner cutoff
  selects one self-adjoint extension, and eigenvalues drift with that
  cutoff.  The rho-space route avoids the ambiguity, which is why it
  is the primary solver and this one is the cross-check.

Eigenvalues in (-1e-8, 0) are classified as finite-box continuum
artifacts, not bound states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import simpson

from .geometry import SurfaceProfile, build_arc_map
from .numerics import TridiagonalOperator, bessel, eigen_tridiagonal_lowest
from .potential import profile_label

_ARTIFACT_FLOOR = -1e-8


@dataclass(frozen=True)
class RadialState:
    """One eigenstate sampled on the solution grid, in both gauges."""

    f: np.ndarray    # F(x), the transformed radial function
    psi: np.ndarray  # psi(rho) = F / sqrt(rho)


@dataclass(frozen=True)
class SpectralSolution:
    mq: int
    eigenvalues: List[float]
    wavefunctions: List[RadialState]
    grid_x: np.ndarray
    grid_rho: np.ndarray
    s: np.ndarray       # sqrt(1 + df^2) per node
    sqrt_g: np.ndarray  # rho * s per node
    boundary: Dict[str, str]
    normalized: bool
    profile_ref: str

    @property
    def bound_count(self) -> int:
        return sum(1 for e in self.eigenvalues if e < _ARTIFACT_FLOOR)


@dataclass(frozen=True)
class AnsatzState:
    """Closed-form mq = 0 bound-state ansatz, sampled and normalized."""

    grid_x: np.ndarray
    grid_rho: np.ndarray
    f: np.ndarray
    psi: np.ndarray      # nan on the axis node: F ~ sqrt(x) ln x there
    density: np.ndarray
    norm_sq: float
    k_prime: float
    s0: float
    energy: float
    mq: int = 0


@dataclass(frozen=True)
class ProbabilityCurrent:
    mq: int
    nodes: List[Tuple[float, float, float]]  # (rho, j_phi, j_rho)
    circulation: np.ndarray                  # 4 pi mq |psi|^2 per node
    j_z: float = 0.0


# ---------------------------------------------------------------------------
# shared pieces

def _geometry_arrays(profile: SurfaceProfile, rhos: np.ndarray):
    """Vectorized slope, s = sqrt(1+df^2), k1 and surface potential."""
    slope = np.asarray(profile.df(rhos), dtype=float)
    curl = np.asarray(profile.d2f(rhos), dtype=float)
    one = 1.0 + slope * slope
    s = np.sqrt(one)
    k1 = curl / (one * s)
    k2 = np.empty_like(k1)
    pos = rhos > 0.0
    k2[pos] = slope[pos] / (rhos[pos] * s[pos])
    k2[~pos] = curl[~pos]  # umbilic limit on the axis
    v_s = -0.25 * np.square(k1 - k2)
    return slope, s, k1, v_s


def _cumulative_arc(profile: SurfaceProfile, rhos: np.ndarray) -> np.ndarray:
    # per-interval Simpson with midpoint evaluations; O(h^4) accumulation
    mids = 0.5 * (rhos[:-1] + rhos[1:])
    s_n = np.sqrt(1.0 + np.square(np.asarray(profile.df(rhos), float)))
    s_m = np.sqrt(1.0 + np.square(np.asarray(profile.df(mids), float)))
    panels = np.diff(rhos) / 6.0 * (s_n[:-1] + 4.0 * s_m + s_n[1:])
    return np.concatenate([[0.0], np.cumsum(panels)])


def _normalize_states(psi_list, rhos, sqrt_g):
    """Scale each psi so that 2 pi int |psi|^2 sqrt(g) drho = 1."""
    out = []
    for psi in psi_list:
        norm = 2.0 * math.pi * float(simpson(psi * psi * sqrt_g, x=rhos))
        if norm <= 0.0:
            raise RuntimeError("state has nonpositive norm")
        out.append(psi / math.sqrt(norm))
    return out


def _package(profile, mq, rhos, xs, psi_list, eigenvalues, boundary):
    _, s, _, _ = _geometry_arrays(profile, rhos)
    sqrt_g = rhos * s
    psi_list = _normalize_states(psi_list, rhos, sqrt_g)
    states = [RadialState(f=np.sqrt(rhos) * psi, psi=psi)
              for psi in psi_list]
    return SpectralSolution(
        mq=int(mq), eigenvalues=[float(e) for e in eigenvalues],
        wavefunctions=states, grid_x=xs, grid_rho=rhos, s=s,
        sqrt_g=sqrt_g, boundary=boundary, normalized=True,
        profile_ref=profile_label(profile))


# ---------------------------------------------------------------------------
# rho-space solver (primary)

def _solve_rho_once(profile, mq, rho_max, n_nodes, n_states,
                    include_positive):
    lo = profile.domain[0]
    h = (rho_max - lo) / n_nodes
    rhos = lo + h * np.arange(n_nodes + 1)
    rhos[-1] = rho_max

    slope, s, k1, v_s = _geometry_arrays(profile, rhos)
    v = v_s.copy()
    if mq > 0:
        pos = rhos > 0.0
        v[pos] += mq * mq / np.square(rhos[pos])
        if not pos.all():
            v[~pos] = 0.0  # Dirichlet there, never assembled
    w = rhos * s          # weight sqrt(g)

    mids = 0.5 * (rhos[:-1] + rhos[1:])
    slope_m = np.asarray(profile.df(mids), dtype=float)
    p_mid = mids / np.sqrt(1.0 + slope_m * slope_m)  # p = rho / s

    regular_axis = (mq == 0 and lo == 0.0)
    i0 = 0 if regular_axis else 1

    idx = np.arange(i0, n_nodes)  # interior unknowns (outer end Dirichlet)
    inner = np.arange(max(i0, 1), n_nodes)
    diag_t_full = np.zeros(n_nodes)
    diag_w_full = np.zeros(n_nodes)
    diag_t_full[inner] = (p_mid[inner - 1] + p_mid[inner]) / h \
        + v[inner] * h * w[inner]
    diag_w_full[inner] = h * w[inner]
    if regular_axis:
        # half-cell [0, h/2] at the axis; zero flux through rho = 0
        quarter = lo + 0.25 * h
        w_quarter = quarter * math.sqrt(
            1.0 + float(profile.df(quarter)) ** 2)
        cell0 = 0.5 * h * w_quarter
        diag_t_full[0] = p_mid[0] / h + v[0] * cell0
        diag_w_full[0] = cell0
    diag_t = diag_t_full[idx]
    diag_w = diag_w_full[idx]
    off_t = -p_mid[idx[:-1]] / h  # interface (i, i+1) sits at i + 1/2

    # reduce the generalized problem T psi = E W psi with diagonal W
    inv_sqrt = 1.0 / np.sqrt(diag_w)
    d = diag_t * inv_sqrt * inv_sqrt
    e = off_t * inv_sqrt[:-1] * inv_sqrt[1:]

    want = min(idx.size, n_states + 8)
    pairs = eigen_tridiagonal_lowest(TridiagonalOperator(d, e), want)

    if include_positive:
        kept = pairs[:n_states]
    else:
        kept = [(val, vec) for val, vec in pairs
                if val < _ARTIFACT_FLOOR][:n_states]
    eigenvalues = [val for val, _ in kept]
    psi_list = []
    for _, u in kept:
        psi = np.zeros(n_nodes + 1)
        psi[idx] = u * inv_sqrt
        psi_list.append(psi)

    xs = _cumulative_arc(profile, rhos)
    boundary = {
        "inner": "regular_axis" if regular_axis
        else "dirichlet_at(%g)" % lo,
        "outer": "dirichlet_at(%g)" % rho_max,
    }
    return _package(profile, mq, rhos, xs, psi_list, eigenvalues, boundary)


def solve_bound_states_rho(profile: SurfaceProfile, mq: int,
                           rho_max: Optional[float] = None,
                           n_nodes: int = 8000, n_states: int = 6,
                           auto_expand: bool = True,
                           max_doublings: int = 3,
                           include_positive: bool = False
                           ) -> SpectralSolution:
    """Bound states from the rho-space Sturm-Liouville discretization.

    Finite-volume scheme on a uniform radial grid; the weight sqrt(g)
    makes the discrete operator symmetric, so eigenvalues are real by
    construction.  With auto_expand the domain (and node count) double
    until the lowest eigenvalue moves by less than 1%, since shallow
    geometrically induced states can be very wide.
    """
    if mq < 0:
        raise ValueError("mq must be nonnegative")
    if n_nodes < 500:
        raise ValueError("n_nodes must be at least 500")
    if n_states < 1:
        raise ValueError("n_states must be positive")
    lo, hi = profile.domain
    scale = profile.sigma0 if profile.sigma0 else 1.0
    if rho_max is None:
        rho_max = min(30.0 * scale, hi)
    rho_max = float(rho_max)
    if not lo < rho_max <= hi + 1e-12 * (1.0 + hi):
        raise ValueError("rho_max outside profile domain")
    if profile.kind == "analytic_gaussian" and rho_max < 10.0 * scale:
        raise ValueError("rho_max must cover the bump: >= 10 sigma0")

    sol = _solve_rho_once(profile, mq, rho_max, n_nodes, n_states,
                          include_positive)
    if not auto_expand:
        return sol
    empties = 1 if sol.bound_count == 0 else 0
    for _ in range(max_doublings):
        next_max = min(2.0 * rho_max, hi)
        if next_max <= rho_max * (1.0 + 1e-12):
            break  # already at the domain edge
        # keep h fixed while the box grows
        next_n = int(round(n_nodes * next_max / rho_max))
        refined = _solve_rho_once(profile, mq, next_max, next_n,
                                  n_states, include_positive)
        if refined.bound_count == 0:
            empties += 1
            if empties >= 2:
                return refined
        elif sol.bound_count > 0:
            e_old, e_new = sol.eigenvalues[0], refined.eigenvalues[0]
            if abs(e_new - e_old) < 0.01 * abs(e_new):
                return refined
            empties = 0
        else:
            empties = 0
        sol, rho_max, n_nodes = refined, next_max, next_n
    return sol


# ---------------------------------------------------------------------------
# x-space solver (cross-check)

def _x_mesh(x_min, x_max, n_nodes, mq, mesh):
    if mesh == "uniform" or (mesh == "auto" and mq >= 1):
        return np.linspace(x_min, x_max, n_nodes + 1)
    if mesh != "auto":
        raise ValueError("mesh must be 'auto' or 'uniform'")
    if x_min <= 0.0:
        return np.linspace(x_min, x_max, n_nodes + 1)
    # grade the first stretch so the -1/(4x^2) region is resolved
    xb = min(1.0, x_min + 0.1 * (x_max - x_min))
    n_inner = n_nodes // 3
    inner = np.geomspace(x_min, xb, n_inner, endpoint=False)
    outer = np.linspace(xb, x_max, n_nodes + 1 - n_inner)
    return np.concatenate([inner, outer])


def solve_bound_states_x(profile: SurfaceProfile, mq: int,
                         x_min: float, x_max: float,
                         n_nodes: int = 8000, n_states: int = 6,
                         mesh: str = "auto",
                         include_positive: bool = False
                         ) -> SpectralSolution:
    """Dirichlet discretization of -F'' + W F = k^2 F on [x_min, x_max].

    The inner cutoff x_min picks a self-adjoint extension when the
    profile reaches the axis (W ~ -1/(4x^2) there, limit-circle case);
    results then depend logarithmically on the cutoff, which the wide
    cross-solver tolerance acknowledges.
    """
    if mq < 0:
        raise ValueError("mq must be nonnegative")
    if x_min < 0.0 or x_max <= x_min:
        raise ValueError("need 0 <= x_min < x_max")
    if n_nodes < 16:
        raise ValueError("n_nodes too small")
    amap = build_arc_map(profile)
    if x_max > amap.total * (1.0 + 1e-9):
        raise ValueError("x_max beyond the profile arc length %g"
                         % amap.total)

    xs = _x_mesh(x_min, min(x_max, amap.total), n_nodes, mq, mesh)
    rhos = np.asarray(amap.rho_at_x(xs), dtype=float)
    slope, s, k1, _ = _geometry_arrays(profile, rhos)
    with np.errstate(divide="ignore"):
        cent = (mq * mq - 0.25) / np.square(rhos)
    w_eff = -0.25 * np.square(k1) + cent

    hl = np.diff(xs)
    cell = 0.5 * (xs[2:] - xs[:-2])
    dm = 1.0 / hl[:-1]
    dp = 1.0 / hl[1:]
    d = (dm + dp) / cell + w_eff[1:-1]
    e = -dp[:-1] / np.sqrt(cell[:-1] * cell[1:])

    want = min(d.size, n_states + 8)
    pairs = eigen_tridiagonal_lowest(TridiagonalOperator(d, e), want)
    if include_positive:
        kept = pairs[:n_states]
    else:
        kept = [(val, vec) for val, vec in pairs
                if val < _ARTIFACT_FLOOR][:n_states]

    eigenvalues = [val for val, _ in kept]
    psi_list = []
    for _, u in kept:
        big_f = np.zeros(xs.size)
        big_f[1:-1] = u / np.sqrt(cell)
        psi_list.append(big_f / np.sqrt(rhos))

    boundary = {"inner": "dirichlet_at(%g)" % x_min,
                "outer": "dirichlet_at(%g)" % x_max}
    return _package(profile, mq, rhos, xs, psi_list, eigenvalues, boundary)


# ---------------------------------------------------------------------------
# analytic approximations

def ansatz_wavefunction(profile: SurfaceProfile, k_prime: float,
                        s0: float = 0.0,
                        grid: Optional[Sequence[float]] = None
                        ) -> AnsatzState:
    """Near-origin bound-state ansatz F0 = sqrt(x) K0(k'x) exp(-int S1').

    S1'(x) = sqrt(a0^2/sigma0^4 - k1^2/4) vanishes at the axis for the
    Gaussian bump, so F0 keeps the sqrt(x) ln x behaviour there, and
    the K0 factor supplies the large-x decay.  The returned state is
    normalized on its own grid (the first decade is log-spaced to
    handle the integrable endpoint).
    """
    if k_prime <= 0.0:
        raise ValueError("k_prime must be positive")
    if profile.a0 is None or profile.sigma0 is None:
        raise ValueError("ansatz needs a Gaussian-bump profile")
    a0 = profile.a0
    sigma0 = profile.sigma0
    amap = build_arc_map(profile)
    if grid is None:
        x_max = min(amap.total, 12.0 / k_prime + 2.0)
        head = np.geomspace(1e-6 * x_max, 0.1 * x_max, 500, endpoint=False)
        tail = np.linspace(0.1 * x_max, x_max, 1500)
        xs = np.concatenate([[0.0], head, tail])
    else:
        xs = np.asarray(grid, dtype=float)
        if xs.ndim != 1 or xs.size < 8:
            raise ValueError("grid must be 1-d with at least 8 nodes")
        if np.any(xs < 0.0) or not np.all(np.diff(xs) > 0.0):
            raise ValueError("grid must be nonnegative and increasing")
    rhos = np.asarray(amap.rho_at_x(xs), dtype=float)
    _, s, k1, _ = _geometry_arrays(profile, rhos)

    flat = (a0 / sigma0 ** 2) ** 2
    radicand = flat - 0.25 * np.square(k1)
    if np.any(radicand < -1e-12 * flat):
        raise ValueError("S1' turns imaginary on the grid: "
                         "ansatz validity violated")
    s1p = np.sqrt(np.clip(radicand, 0.0, None))
    damping = np.concatenate(
        [[0.0], np.cumsum(0.5 * np.diff(xs) * (s1p[:-1] + s1p[1:]))])

    raw = np.empty(xs.size)
    for i, x in enumerate(xs):
        raw[i] = 0.0 if x == 0.0 else \
            math.sqrt(x) * bessel("K", 0, k_prime * x)
    raw *= np.exp(-damping)

    # normalize in the same measure the density is reported in:
    # |psi|^2 sqrt(g) drho = F^2 s drho, so quadrature over rho keeps
    # the reported density integral at exactly 2 pi * norm
    norm_sq = float(simpson(raw * raw * s, x=rhos))
    big_f = raw / math.sqrt(2.0 * math.pi * norm_sq)
    if s0 != 0.0:
        big_f = big_f * complex(math.cos(s0), math.sin(s0))

    psi = np.empty(xs.size, dtype=big_f.dtype)
    with np.errstate(divide="ignore", invalid="ignore"):
        psi[1:] = big_f[1:] / np.sqrt(rhos[1:])
    psi[0] = np.nan  # psi diverges like ln rho on the axis
    density = np.zeros(xs.size)
    density[1:] = np.abs(psi[1:]) ** 2 * rhos[1:] * s[1:]
    energy = -(k_prime * k_prime + flat)
    return AnsatzState(grid_x=xs, grid_rho=rhos, f=big_f, psi=psi,
                       density=density, norm_sq=norm_sq,
                       k_prime=float(k_prime), s0=float(s0), energy=energy)


def continuum_wkb(profile: SurfaceProfile, k: float,
                  grid: Sequence[float]) -> np.ndarray:
    """Outgoing WKB continuum wave F = exp(i int Q dx) / sqrt(Q),
    Q = sqrt(k1^2/4 + 1/(4x^2) + k^2).  |F|^2 Q = 1 by construction."""
    if k <= 0.0:
        raise ValueError("k must be positive")
    xs = np.asarray(grid, dtype=float)
    if np.any(xs <= 0.0) or not np.all(np.diff(xs) > 0.0):
        raise ValueError("grid must be positive and increasing")
    amap = build_arc_map(profile)
    rhos = np.asarray(amap.rho_at_x(xs), dtype=float)
    _, _, k1, _ = _geometry_arrays(profile, rhos)
    q = np.sqrt(0.25 * np.square(k1) + 0.25 / np.square(xs) + k * k)
    phase = np.concatenate(
        [[0.0], np.cumsum(0.5 * np.diff(xs) * (q[:-1] + q[1:]))])
    return np.exp(1j * phase) / np.sqrt(q)


def continuum_bessel(mq: int, k: float, grid: Sequence[float]):
    """Flat-surface continuum pair (sqrt(x) J_mq(kx), sqrt(x) Y_mq(kx)).

    Exact solutions of -F'' + ((mq^2 - 1/4)/x^2) F = k^2 F; the Y
    family is singular at x = 0 and gets nan there if the grid touches
    the origin.
    """
    if mq < 1:
        raise ValueError("mq must be at least 1")
    if k <= 0.0:
        raise ValueError("k must be positive")
    xs = np.asarray(grid, dtype=float)
    if np.any(xs < 0.0):
        raise ValueError("grid must be nonnegative")
    f_j = np.empty(xs.size)
    f_y = np.empty(xs.size)
    for i, x in enumerate(xs):
        if x == 0.0:
            f_j[i] = 0.0
            f_y[i] = np.nan
        else:
            root = math.sqrt(x)
            f_j[i] = root * bessel("J", mq, k * x)
            f_y[i] = root * bessel("Y", mq, k * x)
    return f_j, f_y


# ---------------------------------------------------------------------------
# densities and currents

def probability_density(solution, state_index: int = 0):
    """Radial probability density |psi|^2 sqrt(g) per node.

    Accepts a SpectralSolution (pick a state) or an AnsatzState.
    Vanishes on the axis since sqrt(g) does.
    """
    if isinstance(solution, AnsatzState):
        return list(zip(solution.grid_rho.tolist(),
                        solution.density.tolist()))
    if not solution.normalized:
        raise ValueError("solution is not normalized")
    if not 0 <= state_index < len(solution.wavefunctions):
        raise IndexError("state index %d out of range" % state_index)
    psi = solution.wavefunctions[state_index].psi
    dens = np.abs(psi) ** 2 * solution.sqrt_g
    return list(zip(solution.grid_rho.tolist(), dens.tolist()))


def probability_current(solution, state_index: int = 0
                        ) -> ProbabilityCurrent:
    """Stationary-state probability current.

    j_phi = 2 mq |psi|^2 / rho (natural units, hbar/mass = 2), j_rho
    vanishes for real radial states, j_z is identically zero.  The
    per-node circulation coefficient 2 pi rho j_phi = 4 pi mq |psi|^2
    makes the mq quantization explicit.
    """
    if isinstance(solution, AnsatzState):
        mq = solution.mq
        rhos = solution.grid_rho
        psi = solution.psi
        psi_sq = np.zeros(rhos.size)
        finite = np.isfinite(psi)
        psi_sq[finite] = np.abs(psi[finite]) ** 2
    else:
        if not 0 <= state_index < len(solution.wavefunctions):
            raise IndexError("state index %d out of range" % state_index)
        mq = solution.mq
        rhos = solution.grid_rho
        psi = solution.wavefunctions[state_index].psi
        psi_sq = np.abs(psi) ** 2
    j_phi = np.zeros(rhos.size)
    pos = rhos > 0.0
    j_phi[pos] = 2.0 * mq * psi_sq[pos] / rhos[pos]
    circulation = 4.0 * math.pi * mq * psi_sq
    nodes = [(float(r), float(jp), 0.0)
             for r, jp in zip(rhos, j_phi)]
    return ProbabilityCurrent(mq=mq, nodes=nodes, circulation=circulation,
                              j_z=0.0)
