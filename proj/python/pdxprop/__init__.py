"""Propagators near step and delta potentials.

Exact lattice random-walk combinatorics, closed-form continuum
propagators, and path-decomposition quadrature, cross-validated against
each other. The heavy lifting lives in the C++ extension ``_core``.
"""

from ._core import (  # noqa: F401
    __version__,
    assemble_delta_full,
    assemble_step_full,
    boundary_crossings,
    boundary_derivative,
    catalan,
    catalan_asymptotic_log,
    catalan_triangle,
    central_binomial,
    chung_feller_map,
    continuum_extrapolate,
    crossing_count_asymptotic_log,
    crossing_partition_count,
    delta_edge_by_quadrature,
    delta_edge_propagator,
    delta_full_propagator,
    erfcx,
    free_propagator,
    lattice_density_bruteforce,
    lattice_density_closed,
    restricted_propagator,
    step_edge_propagator,
    time_below_steps,
    transfer_matrix_density,
    verify_free_identity,
)

__all__ = [
    "__version__",
    "assemble_delta_full",
    "assemble_step_full",
    "boundary_crossings",
    "boundary_derivative",
    "catalan",
    "catalan_asymptotic_log",
    "catalan_triangle",
    "central_binomial",
    "chung_feller_map",
    "continuum_extrapolate",
    "crossing_count_asymptotic_log",
    "crossing_partition_count",
    "delta_edge_by_quadrature",
    "delta_edge_propagator",
    "delta_full_propagator",
    "erfcx",
    "free_propagator",
    "lattice_density_bruteforce",
    "lattice_density_closed",
    "restricted_propagator",
    "step_edge_propagator",
    "time_below_steps",
    "transfer_matrix_density",
    "verify_free_identity",
]
