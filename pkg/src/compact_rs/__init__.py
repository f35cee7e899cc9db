"""Compactified trigonometric Ruijsenaars-Schneider systems on the SU(n) double."""

from .alcove import AlcovePoint, delta, nu, sigma, spectral_xi, xi_star
from .coupling import Classification, Coupling, TypeOneInterval, Verdict, classify, is_regular, type_one_intervals
from .double import (
    GroupPair,
    TorusElement,
    duality_S,
    hamiltonian,
    local_lax,
    moment,
    mu0,
    reconstruct,
    torus_act,
)
from .errors import CompactRSError
from .toric import ProjectivePoint, chart_inverse, compare_hamiltonians, embed_E, global_lax, moment_J, rotate
from .zpolytope import (
    Polytope,
    ay_polytope,
    b_polytope,
    b_simplex_vertices,
    delzant_edge_counts,
    fixed_points,
    in_Ay_plus,
    z_vector,
)

__all__ = [
    "AlcovePoint",
    "Classification",
    "CompactRSError",
    "Coupling",
    "GroupPair",
    "Polytope",
    "ProjectivePoint",
    "TorusElement",
    "TypeOneInterval",
    "Verdict",
    "ay_polytope",
    "b_polytope",
    "b_simplex_vertices",
    "chart_inverse",
    "classify",
    "compare_hamiltonians",
    "delta",
    "delzant_edge_counts",
    "duality_S",
    "embed_E",
    "fixed_points",
    "global_lax",
    "hamiltonian",
    "in_Ay_plus",
    "is_regular",
    "local_lax",
    "moment",
    "moment_J",
    "mu0",
    "nu",
    "reconstruct",
    "rotate",
    "sigma",
    "spectral_xi",
    "torus_act",
    "type_one_intervals",
    "xi_star",
    "z_vector",
]
