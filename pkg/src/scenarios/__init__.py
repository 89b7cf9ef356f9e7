"""
Scenario builders for the worked examples, the Scenario type with its JSON
form, the builder registry and the known-value checks.
"""

from .checks import KnownValueCheck, check_known_values, checks_to_dict, evaluate_quantity
from .conditional import (
    component_f,
    outcome_labels,
    payoff_of,
    pcb_component_scenarios,
    pcb_desk,
    pcb_scenario,
    rot_triangle,
    simplex_grid,
    square_isometries,
    square_isometry_maps,
    zerosum_gap_bound,
    zerosum_scenario,
    zerosum_theta,
)
from .geometric import (
    HYPERPLANE_CONFIG,
    hyperplane_scenario,
    lower_r_scenario,
    lower_s_scenario,
    traffic_abcde,
    traffic_reward,
)
from .point_valued import (
    dhk_torus,
    finite_stochastic,
    linear_bandit,
    moment_curve,
    moment_scenario,
    point_valued_scenario,
    torus_points,
)
from .registry import (
    SCENARIO_BUILDERS,
    SCENARIO_DEFAULTS,
    build_scenario,
    load_scenario,
    scenario_from_document,
)
from .scenario import (
    KnownValue,
    Scenario,
    save_scenario,
    scenario_from_json,
    scenario_to_json,
)

__all__ = [
    # checks.py
    "KnownValueCheck",
    "check_known_values",
    "checks_to_dict",
    "evaluate_quantity",
    # conditional.py
    "component_f",
    "outcome_labels",
    "payoff_of",
    "pcb_component_scenarios",
    "pcb_desk",
    "pcb_scenario",
    "rot_triangle",
    "simplex_grid",
    "square_isometries",
    "square_isometry_maps",
    "zerosum_gap_bound",
    "zerosum_scenario",
    "zerosum_theta",
    # geometric.py
    "HYPERPLANE_CONFIG",
    "hyperplane_scenario",
    "lower_r_scenario",
    "lower_s_scenario",
    "traffic_abcde",
    "traffic_reward",
    # point_valued.py
    "dhk_torus",
    "finite_stochastic",
    "linear_bandit",
    "moment_curve",
    "moment_scenario",
    "point_valued_scenario",
    "torus_points",
    # registry.py
    "SCENARIO_BUILDERS",
    "SCENARIO_DEFAULTS",
    "build_scenario",
    "load_scenario",
    "scenario_from_document",
    # scenario.py
    "KnownValue",
    "Scenario",
    "save_scenario",
    "scenario_from_json",
    "scenario_to_json",
]
