"""Discrete second-variation toolkit for weighted Dirichlet energies of
sphere-valued maps on triangulated 2-domains."""

from .identity_maps import (CanonicalFields, NotHomotheticError,
                            canonical_fields, homothetic_reduction_check,
                            pushforward_section, q_identity_conformal_closed,
                            q_identity_discrete, stability_bound_check,
                            yano_check)
from .meshes import (DomainMesh, build_domain, build_flat_torus,
                     build_icosphere, cauchy_schwarz_check,
                     covariant_derivative, divergence, integrate,
                     lie_derivative_metric, tangent_noise)
from .profiles import (Condition, ConditionCheck, FProfile,
                       ProfileValidationError, SingularDerivativeError,
                       check_condition, evaluate, validate_derivatives)
from .spheremaps import (HomothetyFit, MapGeometry, SphereMap,
                         clifford_torus_map, conformal_section, custom_map,
                         equatorial_map, homothety_fit, identity_map,
                         make_map, map_geometry, perturbed_map,
                         project_tangent)
from .stress import (StressReport, diagonalization_check,
                     pointwise_inequality6, stress_tensor, verify_theorem1)
from .variation import (IndexReport, NoConvergenceError, ResidualField,
                        SizeCapError, SolveResult, conformal_cross_check,
                        conformal_index_bound, energy_gradient, f_energy,
                        full_hessian_index, hessian_on_fields,
                        q_conformal_closed, second_variation_generic,
                        solve_f_harmonic)

__version__ = "0.1.0"

__all__ = [
    "CanonicalFields", "Condition", "ConditionCheck", "DomainMesh",
    "FProfile", "HomothetyFit", "IndexReport", "MapGeometry",
    "NoConvergenceError", "NotHomotheticError", "ProfileValidationError",
    "ResidualField", "SingularDerivativeError", "SizeCapError", "SolveResult",
    "SphereMap", "StressReport", "build_domain", "build_flat_torus",
    "build_icosphere", "canonical_fields", "cauchy_schwarz_check",
    "check_condition", "clifford_torus_map", "conformal_cross_check",
    "conformal_index_bound", "conformal_section", "covariant_derivative",
    "custom_map", "diagonalization_check", "divergence", "energy_gradient",
    "equatorial_map", "evaluate", "f_energy", "full_hessian_index",
    "hessian_on_fields", "homothetic_reduction_check", "homothety_fit",
    "identity_map", "integrate", "lie_derivative_metric", "make_map",
    "map_geometry", "perturbed_map", "pointwise_inequality6",
    "project_tangent", "pushforward_section", "q_conformal_closed",
    "q_identity_conformal_closed", "q_identity_discrete",
    "second_variation_generic", "solve_f_harmonic", "stability_bound_check",
    "stress_tensor", "tangent_noise", "validate_derivatives",
    "verify_theorem1", "yano_check",
]
