"""Capability-approach policy simulation engine.

Scenarios declare resources, norms, and actions; agents carry personal
conversion and choice factors; each tick every agent solves a compiled MDP
with dual (short-term, long-term) rewards and acts. Runs are compared on
capability deprivation, functionings, state distributions, and expenses.
"""

from .domain import (
    AgentProfile,
    CentralCapability,
    ChoiceFactors,
    Housing,
    PersonalState,
    Registration,
    ValueDimension,
    central_capability_of,
)
from .scenario import (
    ActionSpec,
    NormRule,
    Resource,
    ScenarioSpec,
    apply_norm_overrides,
    bundled_scenario_names,
    bundled_scenario_path,
    feasibility,
    load_scenario,
    validate,
)
from .mdp import CompiledMdp, DualQTable, compile, enumerate_horizon, value_iteration
from .decision import Lexicographic, NeedConstrained, Weighted, aggregate_choice, derive_policy
from .population import sample_for_scenario, sample_population
from .dynamics import RunReport, TrajectoryEvent, WorldState, run, step_agent, update_choice_factors
from .evaluation import EquityMetrics, capability_status, compare, compute_metrics

__version__ = "0.1.0"

__all__ = [
    "AgentProfile",
    "ActionSpec",
    "CentralCapability",
    "ChoiceFactors",
    "CompiledMdp",
    "DualQTable",
    "EquityMetrics",
    "Housing",
    "Lexicographic",
    "NeedConstrained",
    "NormRule",
    "PersonalState",
    "Registration",
    "Resource",
    "RunReport",
    "ScenarioSpec",
    "TrajectoryEvent",
    "ValueDimension",
    "Weighted",
    "WorldState",
    "aggregate_choice",
    "apply_norm_overrides",
    "bundled_scenario_names",
    "bundled_scenario_path",
    "capability_status",
    "central_capability_of",
    "compare",
    "compile",
    "compute_metrics",
    "derive_policy",
    "enumerate_horizon",
    "feasibility",
    "load_scenario",
    "run",
    "sample_for_scenario",
    "sample_population",
    "step_agent",
    "update_choice_factors",
    "validate",
    "value_iteration",
]
