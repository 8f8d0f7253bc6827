"""The per-tick simulation engine: solve, choose, act, update, record.

Each tick, every agent compiles (or reuses from cache) the MDP induced by its
current state and the world's resource gating, solves the dual Q-tables,
picks an action through the aggregation policy, and samples the transition.
Realised actions feed back twice: into the agent's state and the shared world
(loop one), and into the agent's choice factors (loop two). Agents act in
ascending id order inside a tick (or in a seeded shuffled order), so resource
contention deterministically favours earlier-scheduled agents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .decision import AggregationMode, aggregate_choice, mode_from_config, mode_to_dict
from .domain import AgentProfile, ChoiceFactors, PersonalState
from .mdp import CompiledMdp, DualQTable, apply_state_effects, compile as compile_mdp, solve_dual
from .population import sample_for_scenario
from .scenario import (
    ActionSpec,
    EffectTarget,
    Payer,
    ScenarioSpec,
    apply_norm_overrides,
    feasibility,
    norm_effects_for,
)


@dataclass
class WorldState:
    """Shared mutable context: per-tick resource counters and cumulative expenses."""

    tick: int = 0
    resource_counters: dict[str, Optional[int]] = field(default_factory=dict)
    expenses: dict[Payer, float] = field(
        default_factory=lambda: {Payer.HEALTHCARE: 0.0, Payer.SOCIAL_SERVICES: 0.0}
    )
    environment: Mapping = field(default_factory=dict)
    resource_usage: dict[str, int] = field(default_factory=dict)

    def reset_counters(self, scenario: ScenarioSpec) -> None:
        """Capacities are services, not stocks: they replenish at every tick start."""
        self.resource_counters = {r.name: r.capacity for r in scenario.resources}


@dataclass
class TrajectoryEvent:
    """What one agent did (or could not do) in one tick."""

    tick: int
    agent_id: int
    state_before: PersonalState
    state_after: PersonalState
    chosen: Optional[int]
    chosen_name: Optional[str]
    chosen_feasibility: Optional[float]
    realised: bool
    possible: tuple[int, ...]
    impossible: tuple[int, ...]
    choice_before: Optional[ChoiceFactors] = None  # recorded only when loop two fired
    choice_after: Optional[ChoiceFactors] = None

    def to_dict(self) -> dict:
        d = {
            "tick": self.tick,
            "agent_id": self.agent_id,
            "state_before": self.state_before.to_dict(),
            "state_after": self.state_after.to_dict(),
            "chosen": self.chosen,
            "chosen_name": self.chosen_name,
            "chosen_feasibility": self.chosen_feasibility,
            "realised": self.realised,
            "possible": list(self.possible),
            "impossible": list(self.impossible),
        }
        if self.choice_after is not None:
            d["choice_before"] = self.choice_before.to_dict()
            d["choice_after"] = self.choice_after.to_dict()
        return d


@dataclass
class RunReport:
    """Everything a run produced; the unit of policy comparison."""

    scenario_name: str
    seed: int
    horizon: int
    n_agents: int
    schedule: str
    aggregation: dict
    norm_overrides: dict[str, bool]
    events: list[TrajectoryEvent]
    final_agents: list[AgentProfile]
    expenses: dict[Payer, float]
    resource_usage: dict[str, int]
    norm_activations: dict[str, int]
    state_series: list[dict]
    capability_series: list[dict]

    def to_dict(self) -> dict:
        return {
            "scenario_name": self.scenario_name,
            "seed": self.seed,
            "horizon": self.horizon,
            "n_agents": self.n_agents,
            "schedule": self.schedule,
            "aggregation": self.aggregation,
            "norm_overrides": dict(sorted(self.norm_overrides.items())),
            "events": [e.to_dict() for e in self.events],
            "final_agents": [a.to_dict() for a in self.final_agents],
            "expenses": {p.value: v for p, v in sorted(self.expenses.items())},
            "resource_usage": dict(sorted(self.resource_usage.items())),
            "norm_activations": dict(sorted(self.norm_activations.items())),
            "state_series": self.state_series,
            "capability_series": self.capability_series,
        }


def report_to_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"


TRAJECTORY_COLUMNS = [
    "tick",
    "agent",
    "health_before",
    "housing_before",
    "registration_before",
    "health_after",
    "housing_after",
    "registration_after",
    "action",
    "realised",
    "possible_count",
    "impossible_count",
]


def trajectory_csv(report: RunReport) -> str:
    lines = [",".join(TRAJECTORY_COLUMNS)]
    for e in report.events:
        lines.append(
            ",".join(
                [
                    str(e.tick),
                    str(e.agent_id),
                    str(e.state_before.health),
                    e.state_before.housing.value,
                    e.state_before.registration.value,
                    str(e.state_after.health),
                    e.state_after.housing.value,
                    e.state_after.registration.value,
                    e.chosen_name or "",
                    str(e.realised).lower(),
                    str(len(e.possible)),
                    str(len(e.impossible)),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def update_choice_factors(choice: ChoiceFactors, effects) -> ChoiceFactors:
    """Loop two: apply urgency/value-preference deltas additively, clamped to [0,1]."""
    urgencies = None
    prefs = None
    for rule in effects:
        if rule.target is EffectTarget.URGENCY_DELTA:
            if urgencies is None:
                urgencies = dict(choice.need_urgencies)
            old = urgencies.get(rule.need, 0.0)
            urgencies[rule.need] = min(1.0, max(0.0, old + float(rule.amount)))
        elif rule.target is EffectTarget.VALUE_PREF_DELTA:
            if prefs is None:
                prefs = dict(choice.value_prefs)
            old = prefs.get(rule.value_dim, 0.0)
            prefs[rule.value_dim] = min(1.0, max(0.0, old + float(rule.amount)))
    if urgencies is None and prefs is None:
        return choice
    return ChoiceFactors(
        value_prefs=prefs if prefs is not None else choice.value_prefs,
        need_urgencies=urgencies if urgencies is not None else choice.need_urgencies,
    )


def _apply_world_effects(action: ActionSpec, world: WorldState, scenario: ScenarioSpec) -> None:
    req = action.requires_resource
    if req is not None:
        left = world.resource_counters.get(req.name)
        if left is not None:
            world.resource_counters[req.name] = left - req.quantity
        resource = scenario.resource(req.name)
        world.expenses[resource.payer] = world.expenses.get(resource.payer, 0.0) + resource.unit_cost * req.quantity
        world.resource_usage[req.name] = world.resource_usage.get(req.name, 0) + req.quantity
    for rule in action.effects:
        if rule.target is EffectTarget.RESOURCE_DELTA:
            left = world.resource_counters.get(rule.resource)
            if left is not None:
                world.resource_counters[rule.resource] = max(0, left + int(rule.amount))
        elif rule.target is EffectTarget.EXPENSE_DELTA:
            world.expenses[rule.payer] = world.expenses.get(rule.payer, 0.0) + float(rule.amount)


class SolveCache:
    """Memoizes (compile, solve) results.

    The key covers everything the solution can depend on: the agent's state
    snapshot (attributes restricted to those some condition reads; unread
    attributes only relabel isomorphic states), the agent's personal terms,
    the choice-factor entries that can reach a reward (dimensions referenced
    by some action's relieves/importance), and the world's bounded-resource
    gating clamped at the largest quantity any action requires. Loop-one and
    loop-two updates therefore invalidate exactly when they can change the
    solution; a cache-off equivalence test keeps this honest.
    """

    def __init__(self, scenario: ScenarioSpec):
        self._reward_dims = scenario.reward_dimensions()
        self._read_attrs = self._referenced_attributes(scenario)
        self._qty_caps: dict[str, int] = {r.name: 0 for r in scenario.resources}
        for action in scenario.actions:
            req = action.requires_resource
            if req is not None:
                self._qty_caps[req.name] = max(self._qty_caps[req.name], req.quantity)
        self._store: dict[tuple, tuple[CompiledMdp, DualQTable]] = {}
        self.hits = 0
        self.misses = 0

    @staticmethod
    def _referenced_attributes(scenario: ScenarioSpec) -> tuple[str, ...]:
        read = set()
        conditions = [c for n in scenario.norms for c in n.when]
        for action in scenario.actions:
            conditions.extend(c for t in action.conversion_terms for c in t.when)
        conditions.extend(c for t in scenario.population.personal_factors for c in t.when)
        for c in conditions:
            if c.field.startswith("attributes."):
                read.add(c.field.split(".", 1)[1])
        return tuple(sorted(read))

    def key(self, agent: AgentProfile, world: WorldState) -> tuple:
        state = agent.state
        state_key = (
            state.health,
            state.housing.value,
            state.registration.value,
            tuple(state.attributes.get(a) for a in self._read_attrs),
        )
        gating = tuple(
            (name, min(count, self._qty_caps.get(name, 0)))
            for name, count in sorted(world.resource_counters.items())
            if count is not None
        )
        return (
            state_key,
            agent.choice.key(self._reward_dims),
            tuple(agent.personal_factors),
            gating,
        )

    def get(self, key):
        entry = self._store.get(key)
        if entry is not None:
            self.hits += 1
        return entry

    def put(self, key, value):
        self.misses += 1
        self._store[key] = value


def step_agent(
    agent: AgentProfile,
    world: WorldState,
    scenario: ScenarioSpec,
    mode: AggregationMode,
    rng: np.random.Generator,
    cache: Optional[SolveCache] = None,
    norm_activations: Optional[dict[str, int]] = None,
) -> TrajectoryEvent:
    """Run one agent through one tick; mutates `agent` and `world` in place."""
    state_before = agent.state
    feas = [
        feasibility(agent, action, scenario, world.resource_counters)
        for action in scenario.actions
    ]
    if norm_activations is not None:
        for action in scenario.actions:
            for norm in norm_effects_for(action.name, state_before, scenario):
                norm_activations[norm.id] = norm_activations.get(norm.id, 0) + 1
    possible = tuple(a for a, f in enumerate(feas) if f > 0.0)
    impossible = tuple(a for a, f in enumerate(feas) if f <= 0.0)

    if not possible:
        return TrajectoryEvent(
            tick=world.tick,
            agent_id=agent.id,
            state_before=state_before,
            state_after=state_before,
            chosen=None,
            chosen_name=None,
            chosen_feasibility=None,
            realised=False,
            possible=possible,
            impossible=impossible,
        )

    key = cache.key(agent, world) if cache is not None else None
    entry = cache.get(key) if cache is not None else None
    if entry is None:
        mdp = compile_mdp(agent, scenario, world.resource_counters)
        q = solve_dual(mdp, scenario)
        if cache is not None:
            cache.put(key, (mdp, q))
    else:
        mdp, q = entry

    chosen = aggregate_choice(q, mdp.initial_state, possible, mode)
    action = scenario.actions[chosen]
    f = feas[chosen]
    realised = bool(rng.random() < f)

    choice_before = None
    choice_after = None
    state_after = state_before
    if realised:
        state_after = apply_state_effects(state_before, action)
        agent.state = state_after
        new_choice = update_choice_factors(agent.choice, action.effects)
        if new_choice is not agent.choice:
            choice_before = agent.choice
            choice_after = new_choice
            agent.choice = new_choice
        _apply_world_effects(action, world, scenario)

    return TrajectoryEvent(
        tick=world.tick,
        agent_id=agent.id,
        state_before=state_before,
        state_after=state_after,
        chosen=chosen,
        chosen_name=action.name,
        chosen_feasibility=f,
        realised=realised,
        possible=possible,
        impossible=impossible,
        choice_before=choice_before,
        choice_after=choice_after,
    )


def _distribution(agents: list[AgentProfile]) -> dict:
    n = len(agents)
    health: dict[str, float] = {}
    housing: dict[str, float] = {}
    registration: dict[str, float] = {}
    for a in agents:
        health[str(a.state.health)] = health.get(str(a.state.health), 0) + 1
        housing[a.state.housing.value] = housing.get(a.state.housing.value, 0) + 1
        registration[a.state.registration.value] = registration.get(a.state.registration.value, 0) + 1
    return {
        "health": {k: v / n for k, v in sorted(health.items())},
        "housing": {k: v / n for k, v in sorted(housing.items())},
        "registration": {k: v / n for k, v in sorted(registration.items())},
    }


def _capability_tick_summary(
    events: list[TrajectoryEvent], scenario: ScenarioSpec, n_agents: int
) -> dict:
    modelled = sorted({c for a in scenario.actions for c in a.enables}, key=lambda c: c.value)
    enabled_counts = {c: 0 for c in modelled}
    for e in events:
        enabled_here = {c for a in e.possible for c in scenario.actions[a].enables}
        for c in enabled_here:
            enabled_counts[c] += 1
    return {
        c.value: {"enabled": enabled_counts[c], "deprived": n_agents - enabled_counts[c]}
        for c in modelled
    }


def run(
    scenario: ScenarioSpec,
    seed: int,
    horizon: Optional[int] = None,
    aggregation: Optional[AggregationMode] = None,
    norm_overrides: Optional[Mapping[str, bool]] = None,
    schedule: Optional[str] = None,
    use_cache: bool = True,
) -> RunReport:
    """Simulate the scenario's population for `horizon` ticks, reproducibly from `seed`."""
    overrides = dict(norm_overrides or {})
    active = apply_norm_overrides(scenario, overrides) if overrides else scenario
    ticks = horizon if horizon is not None else active.simulation.horizon
    mode = aggregation if aggregation is not None else mode_from_config(active.simulation.aggregation)
    order_mode = schedule if schedule is not None else active.simulation.schedule

    agents = sample_for_scenario(active, seed)
    step_rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 1])))
    shuffle_rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 2])))

    world = WorldState(environment=active.environment)
    cache = SolveCache(active) if use_cache else None
    norm_activations: dict[str, int] = {n.id: 0 for n in active.norms}

    events: list[TrajectoryEvent] = []
    state_series = [_distribution(agents)]
    capability_series: list[dict] = []

    for tick in range(ticks):
        world.tick = tick
        world.reset_counters(active)
        if order_mode == "shuffled":
            order = [agents[i] for i in shuffle_rng.permutation(len(agents))]
        else:
            order = agents
        tick_events = []
        for agent in order:
            event = step_agent(agent, world, active, mode, step_rng, cache, norm_activations)
            tick_events.append(event)
        events.extend(tick_events)
        state_series.append(_distribution(agents))
        capability_series.append(_capability_tick_summary(tick_events, active, len(agents)))

    return RunReport(
        scenario_name=active.name,
        seed=seed,
        horizon=ticks,
        n_agents=len(agents),
        schedule=order_mode,
        aggregation=mode_to_dict(mode),
        norm_overrides=overrides,
        events=events,
        final_agents=agents,
        expenses=world.expenses,
        resource_usage=world.resource_usage,
        norm_activations=norm_activations,
        state_series=state_series,
        capability_series=capability_series,
    )
