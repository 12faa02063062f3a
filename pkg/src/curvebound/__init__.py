"""Curvature-induced quantum mechanics on surfaces of revolution.

A particle squeezed onto a surface z = f(rho) feels an attractive
geometric potential built from the difference of the principal
curvatures.  This package computes that potential, solves the radial
spectral problem for bound and continuum states in two coordinate
systems, and solves the inverse problem: designing a surface whose
effective radial potential matches a prescribed well.

Natural units throughout: hbar = 1 and 2m = 1, so energies are squared
wavenumbers.
"""

from .numerics import (
    QuadratureResult,
    QuadratureError,
    TridiagonalOperator,
    integrate_adaptive,
    find_root_bracketed,
    eigen_tridiagonal_lowest,
    bessel,
    interpolate_monotone,
    MonotoneInterpolant,
)
from .geometry import (
    SurfaceProfile,
    CurvatureSample,
    make_gaussian_bump,
    make_tabulated_profile,
    make_plane,
    curvature_at,
    arc_length,
    rho_of_x,
    build_arc_map,
    read_profile_csv,
    write_profile_csv,
)
from .potential import (
    EffectivePotentialTable,
    surface_potential,
    effective_potential,
    effective_potential_table,
    near_origin_w0,
    binding_condition,
    default_potential_grid,
)
from .spectral import (
    SpectralSolution,
    RadialState,
    AnsatzState,
    ProbabilityCurrent,
    solve_bound_states_rho,
    solve_bound_states_x,
    ansatz_wavefunction,
    continuum_wkb,
    continuum_bessel,
    probability_density,
    probability_current,
)
from .inverse import (
    PrescribedPotential,
    StripBounds,
    InverseDesign,
    AdmissibleRegionError,
    free_potential,
    harmonic_potential,
    custom_potential,
    inverse_integrand,
    amplitude,
    harmonic_amplitude_closed_form,
    strip_bounds,
    design_profile,
    design_to_profile,
    round_trip_error,
    free_profile_m0_figure3,
    free_profile_m0_slope,
    box_energies_on_free_strip,
    free_strip_arc_length,
)

__version__ = "0.1.0"

__all__ = [
    "QuadratureResult", "QuadratureError", "TridiagonalOperator",
    "integrate_adaptive", "find_root_bracketed", "eigen_tridiagonal_lowest",
    "bessel", "interpolate_monotone", "MonotoneInterpolant",
    "SurfaceProfile", "CurvatureSample", "make_gaussian_bump",
    "make_tabulated_profile", "make_plane", "curvature_at", "arc_length",
    "rho_of_x", "build_arc_map", "read_profile_csv", "write_profile_csv",
    "EffectivePotentialTable", "surface_potential", "effective_potential",
    "effective_potential_table", "near_origin_w0", "binding_condition",
    "default_potential_grid",
    "SpectralSolution", "RadialState", "AnsatzState", "ProbabilityCurrent",
    "solve_bound_states_rho", "solve_bound_states_x", "ansatz_wavefunction",
    "continuum_wkb", "continuum_bessel", "probability_density",
    "probability_current",
    "PrescribedPotential", "StripBounds", "InverseDesign",
    "AdmissibleRegionError", "free_potential", "harmonic_potential",
    "custom_potential", "inverse_integrand", "amplitude",
    "harmonic_amplitude_closed_form", "strip_bounds", "design_profile",
    "design_to_profile", "round_trip_error", "free_profile_m0_figure3",
    "free_profile_m0_slope", "box_energies_on_free_strip",
    "free_strip_arc_length",
]
