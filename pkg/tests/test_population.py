"""Synthetic population sampling: reproducibility, bounds, fidelity."""

import numpy as np
import pytest

from capsim.domain import CentralCapability, Housing, Registration, ValueDimension
from capsim.population import population_csv, sample_for_scenario, sample_population
from capsim.scenario import AttributeMarginal, PopulationSpec, PriorityTier

NEEDS = ("shelter", "food", "pain_relief", "safety")


def rich_spec(n=100, noise=0.05):
    return PopulationSpec(
        n=n,
        registration_mix={Registration.REGISTERED: 0.6, Registration.NON_REGISTERED: 0.4},
        health_mix={0: 0.1, 1: 0.3, 2: 0.6},
        housing_mix={Housing.ROOFLESS: 0.5, Housing.HOUSELESS: 0.3, Housing.HOUSED: 0.2},
        attributes={
            "gender": AttributeMarginal(kind="categorical", weights={"female": 0.3, "male": 0.7}),
            "age": AttributeMarginal(kind="uniform_int", low=18, high=80),
        },
        priority_tiers={
            "primary": PriorityTier(
                weight=0.9,
                capabilities=frozenset(
                    {
                        CentralCapability.BODILY_INTEGRITY,
                        CentralCapability.BODILY_HEALTH,
                        CentralCapability.AFFILIATION,
                        CentralCapability.CONTROL_OVER_ENVIRONMENT,
                    }
                ),
            ),
            "secondary": PriorityTier(
                weight=0.5,
                capabilities=frozenset(
                    {
                        CentralCapability.LIFE,
                        CentralCapability.SENSES_IMAGINATION_THOUGHT,
                        CentralCapability.PLAY,
                    }
                ),
            ),
        },
        value_links={
            ValueDimension.SECURITY: CentralCapability.BODILY_HEALTH,
            ValueDimension.SELF_DIRECTION: CentralCapability.CONTROL_OVER_ENVIRONMENT,
            ValueDimension.STIMULATION: CentralCapability.PLAY,
        },
        need_links={"pain_relief": CentralCapability.BODILY_HEALTH},
        noise=noise,
    )


def test_same_seed_identical_population():
    spec = rich_spec()
    a = sample_population(spec, 99, needs=NEEDS)
    b = sample_population(spec, 99, needs=NEEDS)
    assert [x.to_dict() for x in a] == [y.to_dict() for y in b]


def test_different_seeds_differ():
    spec = rich_spec()
    a = sample_population(spec, 1, needs=NEEDS)
    b = sample_population(spec, 2, needs=NEEDS)
    assert [x.to_dict() for x in a] != [y.to_dict() for y in b]


def test_point_mass_spec_fully_determined():
    spec = PopulationSpec(
        n=1,
        registration_mix={Registration.IN_PROCESS: 1.0},
        health_mix={3: 1.0},
        housing_mix={Housing.INSECURE: 1.0},
        attributes={"age": AttributeMarginal(kind="uniform_int", low=40, high=40)},
        priority_tiers={"only": PriorityTier(weight=0.7, capabilities=frozenset({CentralCapability.LIFE}))},
        value_links={ValueDimension.TRADITION: CentralCapability.LIFE},
        need_links={"food": CentralCapability.LIFE},
        noise=0.0,
    )
    (agent,) = sample_population(spec, 123, needs=NEEDS)
    assert agent.state.health == 3
    assert agent.state.registration is Registration.IN_PROCESS
    assert agent.state.housing is Housing.INSECURE
    assert agent.state.attributes["age"] == 40
    assert agent.choice.pref(ValueDimension.TRADITION) == 0.7
    assert agent.choice.urgency("food") == 0.7
    assert agent.choice.pref(ValueDimension.POWER) == 0.0  # unlinked dimension


def test_tier_weights_flow_through_links():
    spec = rich_spec(n=50, noise=0.0)
    agents = sample_population(spec, 5, needs=NEEDS)
    for a in agents:
        assert a.choice.pref(ValueDimension.SECURITY) == 0.9
        assert a.choice.pref(ValueDimension.STIMULATION) == 0.5
        assert a.choice.urgency("pain_relief") == 0.9
        assert a.choice.urgency("shelter") == 0.0


def test_jitter_stays_in_unit_interval_and_varies():
    spec = rich_spec(n=500, noise=0.5)
    agents = sample_population(spec, 8, needs=NEEDS)
    values = [a.choice.pref(ValueDimension.SECURITY) for a in agents]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert len({round(v, 6) for v in values}) > 10
    urgencies = [a.choice.urgency(n) for a in agents for n in NEEDS]
    assert all(0.0 <= u <= 1.0 for u in urgencies)


def test_registration_share_concentrates():
    spec = rich_spec(n=10_000)
    agents = sample_population(spec, 42, needs=NEEDS)
    share = sum(a.state.registration is Registration.REGISTERED for a in agents) / len(agents)
    assert abs(share - 0.6) <= 0.02


@pytest.mark.parametrize("seed", [11, 22, 33, 44, 55])
def test_all_categorical_marginals_within_two_points(seed):
    spec = rich_spec(n=10_000)
    agents = sample_population(spec, seed, needs=NEEDS)
    n = len(agents)

    def freq(getter, key):
        return sum(1 for a in agents if getter(a) == key) / n

    for reg, w in spec.registration_mix.items():
        assert abs(freq(lambda a: a.state.registration, reg) - w) <= 0.02
    for level, w in spec.health_mix.items():
        assert abs(freq(lambda a: a.state.health, level) - w) <= 0.02
    for housing, w in spec.housing_mix.items():
        assert abs(freq(lambda a: a.state.housing, housing) - w) <= 0.02
    for value, w in spec.attributes["gender"].weights.items():
        assert abs(freq(lambda a: a.state.attributes["gender"], value) - w) <= 0.02


def test_ids_dense_and_unique():
    spec = rich_spec(n=250)
    agents = sample_population(spec, 3, needs=NEEDS)
    assert [a.id for a in agents] == list(range(250))


def test_sample_for_scenario_uses_declared_needs(health_inequity):
    agents = sample_for_scenario(health_inequity, 7)
    assert len(agents) == health_inequity.population.n
    for a in agents[:10]:
        assert set(a.choice.need_urgencies) == set(health_inequity.needs)


def test_population_csv_shape():
    spec = rich_spec(n=5)
    agents = sample_population(spec, 1, needs=NEEDS)
    text = population_csv(agents, needs=NEEDS)
    lines = text.strip().split("\n")
    assert len(lines) == 6
    header = lines[0].split(",")
    assert header[:4] == ["id", "health", "housing", "registration"]
    assert "pref_security" in header
    assert "urgency_shelter" in header
