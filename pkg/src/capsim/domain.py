"""Core capability-approach vocabulary: capabilities, values, needs, agent state.

All types here are immutable value objects; they are shared freely between
modules and across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from .errors import UnknownCapability, ValidationError


class CentralCapability(str, Enum):
    """The ten central human capabilities used as evaluation ends."""

    LIFE = "life"
    BODILY_HEALTH = "bodily_health"
    BODILY_INTEGRITY = "bodily_integrity"
    SENSES_IMAGINATION_THOUGHT = "senses_imagination_thought"
    EMOTIONS = "emotions"
    PRACTICAL_REASON = "practical_reason"
    AFFILIATION = "affiliation"
    OTHER_SPECIES = "other_species"
    PLAY = "play"
    CONTROL_OVER_ENVIRONMENT = "control_over_environment"


class ValueDimension(str, Enum):
    """Schwartz's ten basic values; preference weights over these live in ChoiceFactors."""

    SELF_DIRECTION = "self_direction"
    STIMULATION = "stimulation"
    HEDONISM = "hedonism"
    ACHIEVEMENT = "achievement"
    POWER = "power"
    SECURITY = "security"
    CONFORMITY = "conformity"
    TRADITION = "tradition"
    BENEVOLENCE = "benevolence"
    UNIVERSALISM = "universalism"


#: Need dimensions are scenario-extensible strings; these are the baseline taxonomy
#: a scenario gets when it does not declare its own.
BASELINE_NEEDS: tuple[str, ...] = ("shelter", "food", "pain_relief", "safety")


class Housing(str, Enum):
    """ETHOS housing-exclusion categories, collapsed to the four conceptual ones plus Housed."""

    ROOFLESS = "roofless"
    HOUSELESS = "houseless"
    INSECURE = "insecure"
    INADEQUATE = "inadequate"
    HOUSED = "housed"


class Registration(str, Enum):
    REGISTERED = "registered"
    IN_PROCESS = "in_process"
    NON_REGISTERED = "non_registered"


HEALTH_MIN = 0  # critical
HEALTH_MAX = 4  # healthy


def _normalize_tag(tag: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", tag.strip().lower()).strip("_")


# Extra spellings beyond the canonical snake_case names.
_CAPABILITY_ALIASES = {
    "control_over_one_s_environment": CentralCapability.CONTROL_OVER_ENVIRONMENT,
    "control_over_ones_environment": CentralCapability.CONTROL_OVER_ENVIRONMENT,
    "senses_imagination_and_thought": CentralCapability.SENSES_IMAGINATION_THOUGHT,
}


def central_capability_of(tag: str) -> CentralCapability:
    """Parse a case-insensitive name or alias into a CentralCapability.

    Raises UnknownCapability for anything outside the closed set of ten.
    """
    norm = _normalize_tag(tag)
    try:
        return CentralCapability(norm)
    except ValueError:
        pass
    if norm in _CAPABILITY_ALIASES:
        return _CAPABILITY_ALIASES[norm]
    raise UnknownCapability(tag)


def value_dimension_of(tag: str) -> ValueDimension:
    norm = _normalize_tag(tag)
    try:
        return ValueDimension(norm)
    except ValueError:
        raise ValidationError([f"unknown value dimension: {tag!r}"]) from None


def need_of(tag: str) -> str:
    """Normalize a need name; needs are scenario-declared, so any identifier is shaped here."""
    norm = _normalize_tag(str(tag))
    if not norm:
        raise ValidationError([f"empty need name: {tag!r}"])
    return norm


def _check_unit_interval(kind: str, entries: Mapping[Any, float]) -> list[str]:
    bad = [f"{kind}[{k}] = {v} outside [0,1]" for k, v in entries.items() if not (0.0 <= v <= 1.0)]
    return bad


@dataclass(frozen=True)
class ChoiceFactors:
    """Motivators of behaviour: value preferences (importance) and need urgencies.

    Missing entries read as 0. Out-of-range weights are rejected, not clamped.
    """

    value_prefs: Mapping[ValueDimension, float] = field(default_factory=dict)
    need_urgencies: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        violations = _check_unit_interval("value_prefs", self.value_prefs)
        violations += _check_unit_interval("need_urgencies", self.need_urgencies)
        if violations:
            raise ValidationError(violations)

    def pref(self, dim: ValueDimension) -> float:
        return self.value_prefs.get(dim, 0.0)

    def urgency(self, need: str) -> float:
        return self.need_urgencies.get(need, 0.0)

    def key(self, dims: tuple | None = None) -> tuple:
        """Hashable snapshot. With `dims` (possibly empty), restrict to those
        value/need names; entries outside `dims` cannot influence rewards and
        are excluded on purpose. `None` snapshots everything."""
        if dims is not None:
            return tuple(
                self.value_prefs.get(d, 0.0) if isinstance(d, ValueDimension) else self.need_urgencies.get(d, 0.0)
                for d in dims
            )
        vp = tuple(sorted((d.value, w) for d, w in self.value_prefs.items()))
        nu = tuple(sorted(self.need_urgencies.items()))
        return (vp, nu)

    def to_dict(self) -> dict:
        return {
            "value_prefs": {d.value: w for d, w in sorted(self.value_prefs.items())},
            "need_urgencies": dict(sorted(self.need_urgencies.items())),
        }


@dataclass(frozen=True)
class PersonalState:
    """An agent's personal situation: health level, housing, registration, free-form attributes."""

    health: int
    housing: Housing
    registration: Registration
    attributes: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not (HEALTH_MIN <= self.health <= HEALTH_MAX):
            raise ValidationError([f"health {self.health} outside {HEALTH_MIN}..{HEALTH_MAX}"])
        if not isinstance(self.housing, Housing):
            raise ValidationError([f"housing {self.housing!r} not an ETHOS category"])
        if not isinstance(self.registration, Registration):
            raise ValidationError([f"registration {self.registration!r} invalid"])

    def key(self) -> tuple:
        """Hashable snapshot used by the state registry and solver caches."""
        return (
            self.health,
            self.housing.value,
            self.registration.value,
            tuple(sorted(self.attributes.items())),
        )

    def to_dict(self) -> dict:
        return {
            "health": self.health,
            "housing": self.housing.value,
            "registration": self.registration.value,
            "attributes": dict(sorted(self.attributes.items())),
        }


@dataclass
class AgentProfile:
    """One synthetic person: state, choice factors, and personal conversion terms.

    `personal_factors` holds ConversionTerm objects (see the scenario module);
    they participate in feasibility for every action whose conditions they match.
    """

    id: int
    state: PersonalState
    choice: ChoiceFactors
    personal_factors: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "state": self.state.to_dict(),
            "choice": self.choice.to_dict(),
        }
