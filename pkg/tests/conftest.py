"""Shared fixtures and random-model generators for the test suite."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from capsim.domain import (
    AgentProfile,
    ChoiceFactors,
    Housing,
    PersonalState,
    Registration,
    ValueDimension,
)
from capsim.mdp import make_mdp_from_tables
from capsim.scenario import (
    ActionSpec,
    AggregationConfig,
    Condition,
    ConversionKind,
    ConversionTerm,
    EffectRule,
    EffectTarget,
    NormEffect,
    NormEffectKind,
    NormKind,
    NormRule,
    PopulationSpec,
    Resource,
    ResourceRequirement,
    ScenarioSpec,
    SimulationConfig,
    load_scenario,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def health_inequity():
    return load_scenario("health_inequity")


@pytest.fixture(scope="session")
def shelter_tradeoff():
    return load_scenario("shelter_tradeoff")


@pytest.fixture(scope="session")
def three_state():
    return load_scenario(FIXTURES / "three_state.yaml")


def make_agent(
    agent_id=0,
    health=1,
    housing=Housing.ROOFLESS,
    registration=Registration.REGISTERED,
    attributes=None,
    value_prefs=None,
    need_urgencies=None,
    personal_factors=None,
) -> AgentProfile:
    return AgentProfile(
        id=agent_id,
        state=PersonalState(
            health=health,
            housing=housing,
            registration=registration,
            attributes=attributes or {},
        ),
        choice=ChoiceFactors(
            value_prefs=value_prefs or {},
            need_urgencies=need_urgencies or {},
        ),
        personal_factors=personal_factors or [],
    )


@pytest.fixture
def registered_agent():
    return make_agent(agent_id=0, registration=Registration.REGISTERED)


@pytest.fixture
def non_registered_agent():
    return make_agent(agent_id=1, registration=Registration.NON_REGISTERED)


def random_mdp(rng: np.random.Generator, max_states=6, max_actions=4, reward_span=1.0):
    """A random fully-feasible MDP with row-stochastic transitions."""
    n_states = int(rng.integers(2, max_states + 1))
    n_actions = int(rng.integers(2, max_actions + 1))
    rows = []
    for _ in range(n_states):
        row = []
        for _ in range(n_actions):
            probs = rng.dirichlet(np.ones(n_states))
            row.append([(d, float(p)) for d, p in enumerate(probs)])
        rows.append(row)
    short = rng.uniform(-reward_span, reward_span, size=(n_states, n_actions))
    long = rng.uniform(-reward_span, reward_span, size=(n_states, n_actions))
    return make_mdp_from_tables(rows, short, long)


# ---------------------------------------------------------------------------
# Random scenario generator (property tests over compiled models and runs)
# ---------------------------------------------------------------------------

_HOUSINGS = list(Housing)
_REGISTRATIONS = list(Registration)


def _random_condition(rng: np.random.Generator) -> Condition:
    pick = rng.integers(0, 3)
    if pick == 0:
        return Condition(field="health", op=str(rng.choice(["le", "ge", "eq", "ne"])), value=int(rng.integers(0, 5)))
    if pick == 1:
        return Condition(field="registration", op="eq", value=str(rng.choice([r.value for r in _REGISTRATIONS])))
    return Condition(field="housing", op="eq", value=str(rng.choice([h.value for h in _HOUSINGS])))


def _random_effects(rng: np.random.Generator, needs) -> tuple[EffectRule, ...]:
    effects = []
    n = int(rng.integers(0, 3))
    for _ in range(n):
        pick = rng.integers(0, 4)
        if pick == 0:
            effects.append(EffectRule(target=EffectTarget.HEALTH_DELTA, amount=int(rng.integers(-2, 3))))
        elif pick == 1:
            effects.append(EffectRule(target=EffectTarget.HOUSING_SET, amount=str(rng.choice([h.value for h in _HOUSINGS]))))
        elif pick == 2:
            effects.append(EffectRule(target=EffectTarget.REGISTRATION_SET, amount=str(rng.choice([r.value for r in _REGISTRATIONS]))))
        else:
            effects.append(
                EffectRule(
                    target=EffectTarget.URGENCY_DELTA,
                    need=str(rng.choice(list(needs))),
                    amount=float(rng.uniform(-0.5, 0.5)),
                )
            )
    return tuple(effects)


def random_scenario(rng: np.random.Generator, n_actions=None, horizon=3, n_agents=4) -> ScenarioSpec:
    """A small random but valid scenario: random gates, norms, effects, rewards."""
    needs = ("shelter", "food", "pain_relief", "safety")
    n_actions = n_actions or int(rng.integers(1, 4))
    resources = (Resource(name="svc", capacity=int(rng.integers(1, 6)), unit_cost=float(rng.uniform(0, 20))),)
    values = list(ValueDimension)

    actions = []
    for i in range(n_actions):
        terms = []
        for _ in range(int(rng.integers(0, 3))):
            factor = float(rng.choice([0.0, 0.3, 0.5, 0.8, 1.0]))
            terms.append(
                ConversionTerm(
                    kind=ConversionKind(rng.choice(["personal", "social", "environmental"])),
                    factor=factor,
                    when=(_random_condition(rng),) if rng.random() < 0.8 else (),
                )
            )
        actions.append(
            ActionSpec(
                name=f"act_{i}",
                conversion_terms=tuple(terms),
                requires_resource=ResourceRequirement("svc", 1) if rng.random() < 0.3 else None,
                enables=frozenset(),
                relieves={str(rng.choice(list(needs))): float(rng.uniform(0, 1))} if rng.random() < 0.5 else {},
                importance={values[int(rng.integers(0, len(values)))]: float(rng.uniform(0, 1))}
                if rng.random() < 0.5
                else {},
                effects=_random_effects(rng, needs),
                base_short_reward=float(rng.uniform(-2, 2)),
                base_long_reward=float(rng.uniform(-2, 2)),
            )
        )

    norms = []
    if rng.random() < 0.6:
        effect_pick = rng.random()
        if effect_pick < 0.4:
            effect = NormEffect(NormEffectKind.FORBID)
        elif effect_pick < 0.8:
            effect = NormEffect(NormEffectKind.SCALE, float(rng.uniform(0, 1)))
        else:
            effect = NormEffect(NormEffectKind.ALLOW)
        norms.append(
            NormRule(
                id="norm_0",
                kind=NormKind(rng.choice(["legal", "social"])),
                applies_to=f"act_{int(rng.integers(0, n_actions))}",
                effect=effect,
                when=(_random_condition(rng),) if rng.random() < 0.7 else (),
            )
        )

    population = PopulationSpec(
        n=n_agents,
        registration_mix={Registration.REGISTERED: 0.5, Registration.NON_REGISTERED: 0.5},
        health_mix={1: 0.5, 2: 0.5},
        housing_mix={Housing.ROOFLESS: 0.5, Housing.HOUSED: 0.5},
        noise=0.1,
    )
    return ScenarioSpec(
        name="random",
        resources=resources,
        norms=tuple(norms),
        environment={},
        actions=tuple(actions),
        needs=needs,
        population=population,
        simulation=SimulationConfig(
            horizon=horizon,
            gamma_short=0.5,
            gamma_long=0.9,
            aggregation=AggregationConfig(),
            state_cap=5_000,
        ),
    )
