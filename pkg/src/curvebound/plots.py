"""Figure rendering for the report path.

Every helper takes data already computed by the library, draws one
matplotlib figure, writes it to a PNG next to the delimited output,
and returns the path.  Rendering is optional at the CLI level, so
nothing here is load-bearing for the numbers.
"""
from __future__ import annotations

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

_DPI = 150


def _finish(fig, path: str) -> str:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_curvature_plot(samples, path: str) -> str:
    rho = [s.rho for s in samples]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(rho, [s.k1 for s in samples], label="k1 (meridian)")
    ax.plot(rho, [s.k2 for s in samples], label="k2 (parallel)")
    ax.plot(rho, [s.mean for s in samples], "--", label="mean")
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel("curvature")
    ax.legend(frameon=False)
    return _finish(fig, path)


def save_potential_plot(table, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(table.rho, table.w)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$W_{m}$")
    ax.set_title("effective potential, mq=%d" % table.mq)
    return _finish(fig, path)


def save_spectrum_plot(solution, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for i, state in enumerate(solution.wavefunctions):
        ax.plot(solution.grid_rho, np.real(state.psi),
                label="E%d = %.6g" % (i, solution.eigenvalues[i]))
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$\psi$")
    ax.set_title("bound states, mq=%d" % solution.mq)
    if solution.wavefunctions:
        ax.legend(frameon=False)
    return _finish(fig, path)


def save_density_plot(pairs, path: str) -> str:
    rho = [p[0] for p in pairs]
    dens = [p[1] for p in pairs]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(rho, dens)
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$|\psi|^2 \sqrt{g}$")
    return _finish(fig, path)


def save_current_plot(current, path: str) -> str:
    rho = [n[0] for n in current.nodes]
    jphi = [n[1] for n in current.nodes]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(rho, jphi)
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$j_\phi$")
    ax.set_title("azimuthal current, mq=%d" % current.mq)
    return _finish(fig, path)


def save_design_plot(design, path: str) -> str:
    rho = [r for r, _ in design.profile_table]
    fig, axes = plt.subplots(1, 2, figsize=(8.5, 3.6))
    axes[0].plot(rho, [v for _, v in design.profile_table])
    axes[0].set_xlabel(r"$\rho$")
    axes[0].set_ylabel(r"$f(\rho)$")
    axes[1].plot(rho, [a for _, a in design.amplitude_table])
    axes[1].axhline(1.0, color="gray", lw=0.6, ls="--")
    axes[1].set_xlabel(r"$\rho$")
    axes[1].set_ylabel(r"$\mathcal{A}$")
    fig.suptitle("designed surface, mq=%d" % design.mq)
    return _finish(fig, path)


def save_strip_plot(strip, amplitude_pairs, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if amplitude_pairs:
        ax.plot([r for r, _ in amplitude_pairs],
                [a for _, a in amplitude_pairs])
    for edge, lbl in ((strip.rho_lower, strip.lower_criterion),
                      (strip.rho_upper, strip.upper_criterion)):
        ax.axvline(edge, color="gray", ls="--", lw=0.8)
        ax.annotate(lbl, (edge, 0.05), rotation=90, fontsize=7,
                    textcoords="offset points", xytext=(3, 0))
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$\mathcal{A}$")
    return _finish(fig, path)


def save_roundtrip_plot(rho, residual, path: str) -> str:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogy(rho, np.maximum(np.abs(residual), 1e-18))
    ax.set_xlabel(r"$\rho$")
    ax.set_ylabel(r"$|W + U| / \max(1, |U|)$")
    return _finish(fig, path)
