"""Synthetic agent populations sampled from scenario-declared distributions.

Sampling is driven by a single numpy PCG64 stream (a named, documented
generator, so runs are reproducible across machines from the seed alone) and
draws in one fixed order per agent: registration, health, housing, each
attribute in declaration order, then every value dimension and every declared
need. Choice factors start at the tier weight of the capability each
dimension is linked to (0 when unlinked) plus uniform jitter in
[-noise, +noise], clamped to [0, 1].
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .domain import AgentProfile, ChoiceFactors, PersonalState, ValueDimension
from .scenario import PopulationSpec, ScenarioSpec


def _draw_categorical(rng: np.random.Generator, items: Sequence, weights: Sequence[float]):
    total = float(sum(weights))
    u = rng.random() * total
    acc = 0.0
    for item, w in zip(items, weights):
        acc += w
        if u < acc:
            return item
    return items[-1]


def _tier_weight(spec: PopulationSpec, capability) -> float:
    for tier in spec.priority_tiers.values():
        if capability in tier.capabilities:
            return tier.weight
    return 0.0


def _jittered(rng: np.random.Generator, base: float, noise: float) -> float:
    value = base + rng.uniform(-noise, noise)
    return min(1.0, max(0.0, value))


def sample_population(
    spec: PopulationSpec, seed: int, needs: Sequence[str] = ()
) -> list[AgentProfile]:
    """Draw `spec.n` agents, fully determined by (spec, seed).

    `needs` is the scenario's declared need taxonomy; urgencies are
    initialized for exactly those.
    """
    rng = np.random.Generator(np.random.PCG64(seed))

    reg_items = list(spec.registration_mix.keys())
    reg_weights = [spec.registration_mix[k] for k in reg_items]
    health_items = list(spec.health_mix.keys())
    health_weights = [spec.health_mix[k] for k in health_items]
    housing_items = list(spec.housing_mix.keys())
    housing_weights = [spec.housing_mix[k] for k in housing_items]

    agents: list[AgentProfile] = []
    for i in range(spec.n):
        registration = _draw_categorical(rng, reg_items, reg_weights)
        health = _draw_categorical(rng, health_items, health_weights)
        housing = _draw_categorical(rng, housing_items, housing_weights)

        attributes = {}
        for name, marginal in spec.attributes.items():
            if marginal.kind == "categorical":
                items = list(marginal.weights.keys())
                attributes[name] = _draw_categorical(rng, items, [marginal.weights[k] for k in items])
            else:
                attributes[name] = int(rng.integers(marginal.low, marginal.high + 1))

        value_prefs = {}
        for dim in ValueDimension:
            linked = spec.value_links.get(dim)
            base = _tier_weight(spec, linked) if linked is not None else 0.0
            value_prefs[dim] = _jittered(rng, base, spec.noise)
        need_urgencies = {}
        for need in needs:
            linked = spec.need_links.get(need)
            base = _tier_weight(spec, linked) if linked is not None else 0.0
            need_urgencies[need] = _jittered(rng, base, spec.noise)

        agents.append(
            AgentProfile(
                id=i,
                state=PersonalState(
                    health=health,
                    housing=housing,
                    registration=registration,
                    attributes=attributes,
                ),
                choice=ChoiceFactors(value_prefs=value_prefs, need_urgencies=need_urgencies),
                personal_factors=list(spec.personal_factors),
            )
        )
    return agents


def sample_for_scenario(scenario: ScenarioSpec, seed: int) -> list[AgentProfile]:
    return sample_population(scenario.population, seed, needs=scenario.needs)


def population_csv(agents: list[AgentProfile], needs: Sequence[str] = ()) -> str:
    """Delimited-text dump of a population for inspection."""
    attr_names = sorted({k for a in agents for k in a.state.attributes})
    need_names = sorted(needs) if needs else sorted({n for a in agents for n in a.choice.need_urgencies})
    header = (
        ["id", "health", "housing", "registration"]
        + [f"attr_{n}" for n in attr_names]
        + [f"pref_{d.value}" for d in ValueDimension]
        + [f"urgency_{n}" for n in need_names]
    )
    lines = [",".join(header)]
    for a in agents:
        row = [
            str(a.id),
            str(a.state.health),
            a.state.housing.value,
            a.state.registration.value,
        ]
        row += [str(a.state.attributes.get(n, "")) for n in attr_names]
        row += [repr(a.choice.pref(d)) for d in ValueDimension]
        row += [repr(a.choice.urgency(n)) for n in need_names]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
