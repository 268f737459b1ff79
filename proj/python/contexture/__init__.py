"""Empirical models, strong contextuality, and the contextual fraction for
finite qubit measurement scenarios.

The heavy lifting lives in the compiled extension ``contexture._core``; this
package re-exports its public names.
"""

from ._core import (  # noqa: F401
    EmpiricalModel,
    Gf2System,
    LocalMeasurement,
    Scenario,
    StateVector,
    Support,
    balanced,
    beta,
    beta_derivative,
    bipartite,
    build_model,
    contextual_fraction,
    entropy_at,
    entropy_curve,
    family_gf2_system,
    family_report,
    family_scenario,
    family_support_to_gf2,
    find_consistent_assignment,
    ghz_canonical,
    ghz_slocc,
    ghz_state,
    gf2_unsatisfiable,
    logically_contextual_events,
    model_from_json,
    negate,
    no_signalling_check,
    scenario_from_shorthand,
    support_of,
    vanishing_condition,
    w_class,
    w_state,
)

__all__ = [
    "EmpiricalModel",
    "Gf2System",
    "LocalMeasurement",
    "Scenario",
    "StateVector",
    "Support",
    "balanced",
    "beta",
    "beta_derivative",
    "bipartite",
    "build_model",
    "contextual_fraction",
    "entropy_at",
    "entropy_curve",
    "family_gf2_system",
    "family_report",
    "family_scenario",
    "family_support_to_gf2",
    "find_consistent_assignment",
    "ghz_canonical",
    "ghz_slocc",
    "ghz_state",
    "gf2_unsatisfiable",
    "logically_contextual_events",
    "model_from_json",
    "negate",
    "no_signalling_check",
    "scenario_from_shorthand",
    "support_of",
    "vanishing_condition",
    "w_class",
    "w_state",
]

__version__ = "0.1.0"
