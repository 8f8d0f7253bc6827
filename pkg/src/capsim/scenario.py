"""Declarative world definition and the action-feasibility model.

A scenario file is YAML with top-level keys `format_version`, `resources`,
`norms`, `environment`, `actions`, `population`, `simulation` (plus optional
`name` and `needs`). `load_scenario` parses and fully validates it;
`feasibility` turns conversion factors, norms, and resource availability into
the probability that an action is possible for a given agent.
"""

from __future__ import annotations

import fnmatch
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Any, IO, Mapping, Optional, Sequence

import yaml

from .domain import (
    AgentProfile,
    BASELINE_NEEDS,
    CentralCapability,
    HEALTH_MAX,
    HEALTH_MIN,
    Housing,
    Registration,
    ValueDimension,
    central_capability_of,
    need_of,
    value_dimension_of,
)
from .errors import ParseError, ValidationError

FORMAT_VERSION = 1

_OPS = {
    "eq": lambda a, b: a == b,
    "ne": lambda a, b: a != b,
    "lt": lambda a, b: a < b,
    "le": lambda a, b: a <= b,
    "gt": lambda a, b: a > b,
    "ge": lambda a, b: a >= b,
    "in": lambda a, b: a in b,
}

_ORDER_OPS = {"lt", "le", "gt", "ge"}


@dataclass(frozen=True)
class Condition:
    """A single predicate over an agent's personal state and the environment flags.

    `field` addresses `health`, `housing`, `registration`, `attributes.<name>`,
    or `env.<flag>`. A missing attribute or flag makes the condition false.
    """

    field: str
    op: str
    value: Any

    def evaluate(self, state, environment: Mapping[str, Any]) -> bool:
        current = self._lookup(state, environment)
        if current is None:
            return False
        try:
            return _OPS[self.op](current, self.value)
        except TypeError:
            return False

    def _lookup(self, state, environment):
        if self.field == "health":
            return state.health
        if self.field == "housing":
            return state.housing.value
        if self.field == "registration":
            return state.registration.value
        if self.field.startswith("attributes."):
            return state.attributes.get(self.field.split(".", 1)[1])
        if self.field.startswith("env."):
            return environment.get(self.field.split(".", 1)[1])
        return None


def _conditions_match(conditions: Sequence[Condition], state, environment) -> bool:
    return all(c.evaluate(state, environment) for c in conditions)


class ConversionKind(str, Enum):
    PERSONAL = "personal"
    SOCIAL = "social"
    ENVIRONMENTAL = "environmental"


@dataclass(frozen=True)
class ConversionTerm:
    """A conversion factor: when its conditions match, multiply feasibility by `factor`."""

    kind: ConversionKind
    factor: float
    when: tuple[Condition, ...] = ()

    def matches(self, state, environment) -> bool:
        return _conditions_match(self.when, state, environment)


class NormKind(str, Enum):
    LEGAL = "legal"
    SOCIAL = "social"


class NormEffectKind(str, Enum):
    FORBID = "forbid"
    ALLOW = "allow"
    SCALE = "scale"


@dataclass(frozen=True)
class NormEffect:
    kind: NormEffectKind
    factor: float = 1.0  # only meaningful for SCALE


@dataclass(frozen=True)
class NormRule:
    """A legal or social norm gating action feasibility; the policy lever under study."""

    id: str
    kind: NormKind
    applies_to: str  # glob pattern over action names
    effect: NormEffect
    when: tuple[Condition, ...] = ()
    promotes: frozenset[ValueDimension] = frozenset()
    demotes: frozenset[ValueDimension] = frozenset()

    def matches(self, action_name: str, state, environment) -> bool:
        return fnmatch.fnmatchcase(action_name, self.applies_to) and _conditions_match(
            self.when, state, environment
        )


class Payer(str, Enum):
    HEALTHCARE = "healthcare"
    SOCIAL_SERVICES = "social_services"


@dataclass(frozen=True)
class Resource:
    """A commodity or service; bounded capacities reset every tick (services, not stocks)."""

    name: str
    capacity: Optional[int]  # None = unlimited
    unit_cost: float = 0.0
    payer: Payer = Payer.HEALTHCARE


class EffectTarget(str, Enum):
    HEALTH_DELTA = "health_delta"
    HOUSING_SET = "housing_set"
    REGISTRATION_SET = "registration_set"
    ATTRIBUTE_DELTA = "attribute_delta"
    RESOURCE_DELTA = "resource_delta"
    EXPENSE_DELTA = "expense_delta"
    URGENCY_DELTA = "urgency_delta"
    VALUE_PREF_DELTA = "value_pref_delta"


#: Effect targets that change the PersonalState (and therefore the MDP state space).
STATE_TARGETS = frozenset(
    {
        EffectTarget.HEALTH_DELTA,
        EffectTarget.HOUSING_SET,
        EffectTarget.REGISTRATION_SET,
        EffectTarget.ATTRIBUTE_DELTA,
    }
)


@dataclass(frozen=True)
class EffectRule:
    """One consequence of realising an action; clamping follows the target's domain."""

    target: EffectTarget
    amount: Any = None  # number for deltas, categorical value for *_set
    attribute: Optional[str] = None  # ATTRIBUTE_DELTA
    need: Optional[str] = None  # URGENCY_DELTA
    value_dim: Optional[ValueDimension] = None  # VALUE_PREF_DELTA
    resource: Optional[str] = None  # RESOURCE_DELTA
    payer: Optional[Payer] = None  # EXPENSE_DELTA


@dataclass(frozen=True)
class ResourceRequirement:
    name: str
    quantity: int = 1


@dataclass(frozen=True)
class ActionSpec:
    """A specific capability: a context-dependent action an agent may be able to take."""

    name: str
    conversion_terms: tuple[ConversionTerm, ...] = ()
    requires_resource: Optional[ResourceRequirement] = None
    enables: frozenset[CentralCapability] = frozenset()
    relieves: Mapping[str, float] = field(default_factory=dict)
    importance: Mapping[ValueDimension, float] = field(default_factory=dict)
    effects: tuple[EffectRule, ...] = ()
    base_short_reward: float = 0.0
    base_long_reward: float = 0.0


@dataclass(frozen=True)
class AttributeMarginal:
    """Distribution for one agent attribute: categorical weights or a uniform integer range."""

    kind: str  # "categorical" | "uniform_int"
    weights: Mapping[Any, float] = field(default_factory=dict)
    low: int = 0
    high: int = 0


@dataclass(frozen=True)
class PriorityTier:
    weight: float
    capabilities: frozenset[CentralCapability]


@dataclass(frozen=True)
class PopulationSpec:
    """Distributions a synthetic population is sampled from."""

    n: int
    registration_mix: Mapping[Registration, float]
    health_mix: Mapping[int, float]
    housing_mix: Mapping[Housing, float]
    attributes: Mapping[str, AttributeMarginal] = field(default_factory=dict)
    priority_tiers: Mapping[str, PriorityTier] = field(default_factory=dict)
    value_links: Mapping[ValueDimension, CentralCapability] = field(default_factory=dict)
    need_links: Mapping[str, CentralCapability] = field(default_factory=dict)
    noise: float = 0.0
    personal_factors: tuple[ConversionTerm, ...] = ()


class AggregationName(str, Enum):
    LEXICOGRAPHIC = "lexicographic"
    WEIGHTED = "weighted"
    NEED_CONSTRAINED = "need_constrained"


@dataclass(frozen=True)
class AggregationConfig:
    mode: AggregationName = AggregationName.LEXICOGRAPHIC
    epsilon: float = 1e-9
    w: float = 0.5

    def to_dict(self) -> dict:
        if self.mode is AggregationName.WEIGHTED:
            return {"mode": self.mode.value, "w": self.w}
        return {"mode": self.mode.value, "epsilon": self.epsilon}


@dataclass(frozen=True)
class SimulationConfig:
    horizon: int = 1
    gamma_short: float = 0.5
    gamma_long: float = 0.9
    aggregation: AggregationConfig = AggregationConfig()
    vi_tolerance: float = 1e-8
    vi_max_iter: int = 10_000
    state_cap: int = 100_000
    schedule: str = "ascending"  # "ascending" | "shuffled"


@dataclass(frozen=True)
class ScenarioSpec:
    """A fully validated, immutable world definition."""

    name: str
    resources: tuple[Resource, ...]
    norms: tuple[NormRule, ...]
    environment: Mapping[str, Any]
    actions: tuple[ActionSpec, ...]
    needs: tuple[str, ...]
    population: PopulationSpec
    simulation: SimulationConfig
    format_version: int = FORMAT_VERSION

    def action_index(self, name: str) -> int:
        for i, a in enumerate(self.actions):
            if a.name == name:
                return i
        raise KeyError(name)

    def resource(self, name: str) -> Resource:
        for r in self.resources:
            if r.name == name:
                return r
        raise KeyError(name)

    def reward_dimensions(self) -> tuple:
        """Value/need dimensions that can influence rewards in this scenario.

        Choice-factor entries outside this tuple never change compiled rewards,
        so solver caches may key on exactly these.
        """
        dims: list = []
        for a in self.actions:
            for d in a.importance:
                if d not in dims:
                    dims.append(d)
            for n in a.relieves:
                if n not in dims:
                    dims.append(n)
        return tuple(dims)


# ---------------------------------------------------------------------------
# Feasibility
# ---------------------------------------------------------------------------

def norm_effects_for(
    action_name: str, state, scenario: ScenarioSpec
) -> list[NormRule]:
    """Norms whose pattern and condition match this action in this state."""
    return [n for n in scenario.norms if n.matches(action_name, state, scenario.environment)]


def feasibility(
    agent: AgentProfile,
    action: ActionSpec,
    scenario: ScenarioSpec,
    resources_left: Optional[Mapping[str, Optional[int]]] = None,
    state=None,
) -> float:
    """Probability that `action` is possible for `agent`: the product of all
    matching conversion-term factors, the combined norm effect, and a 0/1
    resource-availability indicator.

    `resources_left` maps resource name to remaining capacity this tick
    (None = unlimited); omit it to assume declared capacities.
    `state` overrides the agent's current PersonalState (used when compiling
    transition tables over hypothetical states). Result is in [0, 1]; the
    action is possible iff the result is > 0.
    """
    st = state if state is not None else agent.state
    env = scenario.environment

    p = 1.0
    for term in action.conversion_terms:
        if term.matches(st, env):
            p *= term.factor
    for term in agent.personal_factors:
        if term.matches(st, env):
            p *= term.factor

    forbidden = False
    for norm in norm_effects_for(action.name, st, scenario):
        if norm.effect.kind is NormEffectKind.FORBID:
            forbidden = True
        elif norm.effect.kind is NormEffectKind.SCALE:
            p *= norm.effect.factor
        # ALLOW contributes a neutral multiplier; forbid dominates scale dominates allow.
    if forbidden:
        return 0.0

    req = action.requires_resource
    if req is not None:
        if resources_left is not None:
            left = resources_left.get(req.name)
            if left is not None and left < req.quantity:
                return 0.0
        else:
            cap = scenario.resource(req.name).capacity
            if cap is not None and cap < req.quantity:
                return 0.0
    return p


def apply_norm_overrides(
    scenario: ScenarioSpec, overrides: Mapping[str, bool]
) -> ScenarioSpec:
    """Return a scenario with the given norms enabled/disabled; unknown ids raise."""
    known = {n.id for n in scenario.norms}
    unknown = sorted(set(overrides) - known)
    if unknown:
        raise ValidationError([f"norm override references unknown norm: {i}" for i in unknown])
    kept = tuple(n for n in scenario.norms if overrides.get(n.id, True))
    return replace(scenario, norms=kept)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _req(mapping: Mapping, key: str, where: str):
    if key not in mapping:
        raise ParseError(f"missing required key {key!r}", where)
    return mapping[key]


def _as_mapping(obj, where: str) -> Mapping:
    if not isinstance(obj, Mapping):
        raise ParseError(f"expected a mapping, got {type(obj).__name__}", where)
    return obj


def _as_list(obj, where: str) -> list:
    if obj is None:
        return []
    if not isinstance(obj, list):
        raise ParseError(f"expected a list, got {type(obj).__name__}", where)
    return obj


def _parse_conditions(raw, where: str) -> tuple[Condition, ...]:
    if raw is None:
        return ()
    items = raw if isinstance(raw, list) else [raw]
    conds = []
    for i, item in enumerate(items):
        m = _as_mapping(item, f"{where}[{i}]")
        op = str(m.get("op", "eq"))
        if op not in _OPS:
            raise ParseError(f"unknown condition op {op!r}", where)
        conds.append(Condition(field=str(_req(m, "field", where)), op=op, value=m.get("value")))
    return tuple(conds)


def _parse_term(raw, where: str) -> ConversionTerm:
    m = _as_mapping(raw, where)
    kind_raw = str(_req(m, "kind", where)).lower()
    try:
        kind = ConversionKind(kind_raw)
    except ValueError:
        raise ParseError(f"unknown conversion kind {kind_raw!r}", where) from None
    return ConversionTerm(
        kind=kind,
        factor=float(_req(m, "factor", where)),
        when=_parse_conditions(m.get("when"), where),
    )


def _parse_norm(raw, where: str) -> NormRule:
    m = _as_mapping(raw, where)
    effect_raw = _req(m, "effect", where)
    if isinstance(effect_raw, Mapping):
        if "scale" not in effect_raw:
            raise ParseError("norm effect mapping must carry a 'scale' factor", where)
        effect = NormEffect(NormEffectKind.SCALE, float(effect_raw["scale"]))
    else:
        name = str(effect_raw).lower()
        if name not in ("forbid", "allow"):
            raise ParseError(f"norm effect must be forbid, allow, or {{scale: f}}; got {name!r}", where)
        effect = NormEffect(NormEffectKind(name))
    kind_raw = str(_req(m, "kind", where)).lower()
    try:
        kind = NormKind(kind_raw)
    except ValueError:
        raise ParseError(f"unknown norm kind {kind_raw!r}", where) from None
    return NormRule(
        id=str(_req(m, "id", where)),
        kind=kind,
        applies_to=str(_req(m, "applies_to", where)),
        effect=effect,
        when=_parse_conditions(m.get("when"), where),
        promotes=frozenset(value_dimension_of(v) for v in _as_list(m.get("promotes"), where)),
        demotes=frozenset(value_dimension_of(v) for v in _as_list(m.get("demotes"), where)),
    )


def _parse_effect(raw, where: str) -> EffectRule:
    m = _as_mapping(raw, where)
    target_raw = str(_req(m, "target", where)).lower()
    try:
        target = EffectTarget(target_raw)
    except ValueError:
        raise ParseError(f"unknown effect target {target_raw!r}", where) from None
    kwargs: dict[str, Any] = {"target": target}
    if target is EffectTarget.HOUSING_SET:
        kwargs["amount"] = str(_req(m, "value", where)).lower()
    elif target is EffectTarget.REGISTRATION_SET:
        kwargs["amount"] = str(_req(m, "value", where)).lower()
    elif target is EffectTarget.ATTRIBUTE_DELTA:
        kwargs["attribute"] = str(_req(m, "attribute", where))
        kwargs["amount"] = m.get("amount", m.get("value"))
    else:
        kwargs["amount"] = _req(m, "amount", where)
    if target is EffectTarget.URGENCY_DELTA:
        kwargs["need"] = need_of(_req(m, "need", where))
    if target is EffectTarget.VALUE_PREF_DELTA:
        kwargs["value_dim"] = value_dimension_of(_req(m, "value_dim", where))
    if target is EffectTarget.RESOURCE_DELTA:
        kwargs["resource"] = str(_req(m, "resource", where))
    if target is EffectTarget.EXPENSE_DELTA:
        payer_raw = str(_req(m, "payer", where)).lower()
        try:
            kwargs["payer"] = Payer(payer_raw)
        except ValueError:
            raise ParseError(f"unknown payer {payer_raw!r}", where) from None
    return EffectRule(**kwargs)


def _parse_action(raw, where: str) -> ActionSpec:
    m = _as_mapping(raw, where)
    req = None
    if m.get("requires_resource") is not None:
        rr = _as_mapping(m["requires_resource"], f"{where}.requires_resource")
        req = ResourceRequirement(
            name=str(_req(rr, "name", where)), quantity=int(rr.get("quantity", 1))
        )
    relieves = {
        need_of(k): float(v)
        for k, v in _as_mapping(m.get("relieves") or {}, f"{where}.relieves").items()
    }
    importance = {
        value_dimension_of(k): float(v)
        for k, v in _as_mapping(m.get("importance") or {}, f"{where}.importance").items()
    }
    return ActionSpec(
        name=str(_req(m, "name", where)),
        conversion_terms=tuple(
            _parse_term(t, f"{where}.conversion_terms[{i}]")
            for i, t in enumerate(_as_list(m.get("conversion_terms"), where))
        ),
        requires_resource=req,
        enables=frozenset(central_capability_of(c) for c in _as_list(m.get("enables"), where)),
        relieves=relieves,
        importance=importance,
        effects=tuple(
            _parse_effect(e, f"{where}.effects[{i}]")
            for i, e in enumerate(_as_list(m.get("effects"), where))
        ),
        base_short_reward=float(m.get("base_short_reward", 0.0)),
        base_long_reward=float(m.get("base_long_reward", 0.0)),
    )


def _parse_resource(raw, where: str) -> Resource:
    m = _as_mapping(raw, where)
    cap_raw = _req(m, "capacity", where)
    capacity: Optional[int]
    if isinstance(cap_raw, str) and cap_raw.lower() == "unlimited":
        capacity = None
    else:
        capacity = int(cap_raw)
    payer_raw = str(m.get("payer", "healthcare")).lower()
    try:
        payer = Payer(payer_raw)
    except ValueError:
        raise ParseError(f"unknown payer {payer_raw!r}", where) from None
    return Resource(
        name=str(_req(m, "name", where)),
        capacity=capacity,
        unit_cost=float(m.get("unit_cost", 0.0)),
        payer=payer,
    )


def _parse_enum_mix(raw, enum_cls, where: str) -> dict:
    m = _as_mapping(raw, where)
    out = {}
    for k, v in m.items():
        try:
            key = enum_cls(str(k).lower())
        except ValueError:
            raise ParseError(f"unknown {enum_cls.__name__} {k!r}", where) from None
        out[key] = float(v)
    return out


def _parse_population(raw, where: str) -> PopulationSpec:
    m = _as_mapping(raw, where)
    attributes = {}
    for name, spec in _as_mapping(m.get("attributes") or {}, f"{where}.attributes").items():
        sm = _as_mapping(spec, f"{where}.attributes.{name}")
        kind = str(_req(sm, "type", where)).lower()
        if kind == "categorical":
            attributes[str(name)] = AttributeMarginal(
                kind="categorical",
                weights={k: float(v) for k, v in _as_mapping(sm["weights"], where).items()},
            )
        elif kind == "uniform_int":
            attributes[str(name)] = AttributeMarginal(
                kind="uniform_int", low=int(_req(sm, "low", where)), high=int(_req(sm, "high", where))
            )
        else:
            raise ParseError(f"unknown marginal type {kind!r}", where)
    tiers = {}
    for tname, tspec in _as_mapping(m.get("priority_tiers") or {}, f"{where}.priority_tiers").items():
        tm = _as_mapping(tspec, f"{where}.priority_tiers.{tname}")
        tiers[str(tname)] = PriorityTier(
            weight=float(_req(tm, "weight", where)),
            capabilities=frozenset(
                central_capability_of(c) for c in _as_list(_req(tm, "capabilities", where), where)
            ),
        )
    health_mix = {int(k): float(v) for k, v in _as_mapping(_req(m, "health_mix", where), where).items()}
    return PopulationSpec(
        n=int(_req(m, "n", where)),
        registration_mix=_parse_enum_mix(_req(m, "registration_mix", where), Registration, where),
        health_mix=health_mix,
        housing_mix=_parse_enum_mix(_req(m, "housing_mix", where), Housing, where),
        attributes=attributes,
        priority_tiers=tiers,
        value_links={
            value_dimension_of(k): central_capability_of(v)
            for k, v in _as_mapping(m.get("value_links") or {}, f"{where}.value_links").items()
        },
        need_links={
            need_of(k): central_capability_of(v)
            for k, v in _as_mapping(m.get("need_links") or {}, f"{where}.need_links").items()
        },
        noise=float(m.get("noise", 0.0)),
        personal_factors=tuple(
            _parse_term(t, f"{where}.personal_factors[{i}]")
            for i, t in enumerate(_as_list(m.get("personal_factors"), where))
        ),
    )


def _parse_aggregation(raw, where: str) -> AggregationConfig:
    if raw is None:
        return AggregationConfig()
    m = _as_mapping(raw, where)
    mode_raw = str(_req(m, "mode", where)).lower()
    try:
        mode = AggregationName(mode_raw)
    except ValueError:
        raise ParseError(f"unknown aggregation mode {mode_raw!r}", where) from None
    return AggregationConfig(
        mode=mode,
        epsilon=float(m.get("epsilon", 1e-9)),
        w=float(m.get("w", 0.5)),
    )


def _parse_simulation(raw, where: str) -> SimulationConfig:
    m = _as_mapping(raw or {}, where)
    return SimulationConfig(
        horizon=int(m.get("horizon", 1)),
        gamma_short=float(m.get("gamma_short", 0.5)),
        gamma_long=float(m.get("gamma_long", 0.9)),
        aggregation=_parse_aggregation(m.get("aggregation"), f"{where}.aggregation"),
        vi_tolerance=float(m.get("vi_tolerance", 1e-8)),
        vi_max_iter=int(m.get("vi_max_iter", 10_000)),
        state_cap=int(m.get("state_cap", 100_000)),
        schedule=str(m.get("schedule", "ascending")).lower(),
    )


def parse_scenario(doc: Mapping, name_hint: str = "scenario") -> ScenarioSpec:
    """Build a ScenarioSpec from an already-decoded mapping, then validate it."""
    top = _as_mapping(doc, "top level")
    version = int(top.get("format_version", -1))
    needs_raw = top.get("needs")
    needs = tuple(need_of(n) for n in needs_raw) if needs_raw else BASELINE_NEEDS
    spec = ScenarioSpec(
        name=str(top.get("name", name_hint)),
        format_version=version,
        resources=tuple(
            _parse_resource(r, f"resources[{i}]") for i, r in enumerate(_as_list(top.get("resources"), "resources"))
        ),
        norms=tuple(_parse_norm(n, f"norms[{i}]") for i, n in enumerate(_as_list(top.get("norms"), "norms"))),
        environment=dict(_as_mapping(top.get("environment") or {}, "environment")),
        actions=tuple(
            _parse_action(a, f"actions[{i}]") for i, a in enumerate(_as_list(top.get("actions"), "actions"))
        ),
        needs=needs,
        population=_parse_population(_req(top, "population", "top level"), "population"),
        simulation=_parse_simulation(top.get("simulation"), "simulation"),
    )
    violations = validate(spec)
    if violations:
        raise ValidationError(violations)
    return spec


def load_scenario(source: str | Path | IO) -> ScenarioSpec:
    """Parse and validate a scenario file (path, name of a bundled scenario, or stream)."""
    name_hint = "scenario"
    if isinstance(source, (str, Path)):
        path = Path(source)
        if not path.exists():
            bundled = bundled_scenario_path(str(source))
            if bundled is not None:
                path = bundled
            else:
                raise ParseError(f"no such scenario file or bundled scenario: {source}")
        name_hint = path.stem
        text = path.read_text(encoding="utf-8")
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        loc = f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
        raise ParseError(f"invalid YAML: {exc}", loc) from exc
    if doc is None:
        raise ParseError("empty scenario document")
    return parse_scenario(doc, name_hint)


def bundled_scenario_path(name: str) -> Optional[Path]:
    """Resolve the name of a scenario shipped with the package to its file path."""
    stem = name[:-5] if name.endswith(".yaml") else name
    candidate = importlib_resources.files("capsim") / "scenarios" / f"{stem}.yaml"
    try:
        if candidate.is_file():
            return Path(str(candidate))
    except (OSError, ModuleNotFoundError):
        pass
    return None


def bundled_scenario_names() -> list[str]:
    root = importlib_resources.files("capsim") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".yaml"))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _check_mix(mix: Mapping, what: str, out: list[str]):
    if not mix:
        out.append(f"{what}: empty distribution")
        return
    total = 0.0
    for k, v in mix.items():
        if v < 0:
            out.append(f"{what}[{k}]: negative weight {v}")
        total += v
    if not math.isclose(total, 1.0, abs_tol=1e-9):
        out.append(f"{what}: weights sum to {total!r}, expected 1")


def _check_conditions(conds: Sequence[Condition], where: str, out: list[str]):
    for c in conds:
        ok = (
            c.field in ("health", "housing", "registration")
            or c.field.startswith("attributes.")
            or c.field.startswith("env.")
        )
        if not ok:
            out.append(f"{where}: condition field {c.field!r} not addressable")
        if c.op in _ORDER_OPS and isinstance(c.value, str):
            out.append(f"{where}: ordering op {c.op!r} needs a numeric value, got {c.value!r}")
        if c.op == "in" and not isinstance(c.value, (list, tuple)):
            out.append(f"{where}: op 'in' needs a list value")


def validate(spec: ScenarioSpec) -> list[str]:
    """Check every scenario invariant; an empty list means the scenario is sound."""
    out: list[str] = []
    if spec.format_version != FORMAT_VERSION:
        out.append(f"format_version {spec.format_version} unsupported (expected {FORMAT_VERSION})")

    names = [r.name for r in spec.resources]
    if len(set(names)) != len(names):
        out.append("duplicate resource names")
    for r in spec.resources:
        if r.capacity is not None and r.capacity < 0:
            out.append(f"resource {r.name}: capacity {r.capacity} negative")
        if r.unit_cost < 0:
            out.append(f"resource {r.name}: unit_cost {r.unit_cost} negative")

    norm_ids = [n.id for n in spec.norms]
    if len(set(norm_ids)) != len(norm_ids):
        out.append("duplicate norm ids")
    action_names = [a.name for a in spec.actions]
    for n in spec.norms:
        if n.effect.kind is NormEffectKind.SCALE and not (0.0 <= n.effect.factor <= 1.0):
            out.append(f"norm {n.id}: scale factor {n.effect.factor} outside [0,1]")
        if n.promotes & n.demotes:
            overlap = sorted(d.value for d in n.promotes & n.demotes)
            out.append(f"norm {n.id}: promotes and demotes overlap: {overlap}")
        if not any(fnmatch.fnmatchcase(a, n.applies_to) for a in action_names):
            out.append(f"norm {n.id}: applies_to {n.applies_to!r} matches no action")
        _check_conditions(n.when, f"norm {n.id}", out)

    if not spec.actions:
        out.append("no actions")
    if len(set(action_names)) != len(action_names):
        out.append("duplicate action names")
    declared_needs = set(spec.needs)
    resource_names = set(names)
    for a in spec.actions:
        where = f"action {a.name}"
        if a.requires_resource is not None:
            if a.requires_resource.name not in resource_names:
                out.append(f"{where}: requires undeclared resource {a.requires_resource.name!r}")
            if a.requires_resource.quantity < 1:
                out.append(f"{where}: resource quantity must be >= 1")
        for t in a.conversion_terms:
            if not (0.0 <= t.factor <= 1.0):
                out.append(f"{where}: conversion factor {t.factor} outside [0,1]")
            _check_conditions(t.when, where, out)
        for need, rel in a.relieves.items():
            if need not in declared_needs:
                out.append(f"{where}: relieves undeclared need {need!r}")
            if not (0.0 <= rel <= 1.0):
                out.append(f"{where}: relief[{need}] = {rel} outside [0,1]")
        for dim, imp in a.importance.items():
            if not (0.0 <= imp <= 1.0):
                out.append(f"{where}: importance[{dim.value}] = {imp} outside [0,1]")
        for e in a.effects:
            if e.target is EffectTarget.HEALTH_DELTA and not isinstance(e.amount, int):
                out.append(f"{where}: health_delta amount must be an integer")
            if e.target is EffectTarget.HOUSING_SET:
                try:
                    Housing(e.amount)
                except ValueError:
                    out.append(f"{where}: housing_set value {e.amount!r} invalid")
            if e.target is EffectTarget.REGISTRATION_SET:
                try:
                    Registration(e.amount)
                except ValueError:
                    out.append(f"{where}: registration_set value {e.amount!r} invalid")
            if e.target is EffectTarget.URGENCY_DELTA and e.need not in declared_needs:
                out.append(f"{where}: urgency_delta on undeclared need {e.need!r}")
            if e.target is EffectTarget.RESOURCE_DELTA and e.resource not in resource_names:
                out.append(f"{where}: resource_delta on undeclared resource {e.resource!r}")
            if e.target is EffectTarget.EXPENSE_DELTA and (not isinstance(e.amount, (int, float)) or e.amount < 0):
                out.append(f"{where}: expense_delta amount must be >= 0 (expenses are cumulative)")
            if e.target is EffectTarget.ATTRIBUTE_DELTA and e.attribute is None:
                out.append(f"{where}: attribute_delta needs an attribute name")

    pop = spec.population
    if pop.n < 1:
        out.append(f"population: n = {pop.n}, expected >= 1")
    if not (0.0 <= pop.noise <= 0.5):
        out.append(f"population: noise {pop.noise} outside [0, 0.5]")
    _check_mix(pop.registration_mix, "population.registration_mix", out)
    _check_mix(pop.housing_mix, "population.housing_mix", out)
    _check_mix(pop.health_mix, "population.health_mix", out)
    for level in pop.health_mix:
        if not (HEALTH_MIN <= level <= HEALTH_MAX):
            out.append(f"population.health_mix: level {level} outside {HEALTH_MIN}..{HEALTH_MAX}")
    for name, marg in pop.attributes.items():
        if marg.kind == "categorical":
            _check_mix(marg.weights, f"population.attributes.{name}", out)
        elif marg.low > marg.high:
            out.append(f"population.attributes.{name}: low {marg.low} > high {marg.high}")
    for tname, tier in pop.priority_tiers.items():
        if not (0.0 <= tier.weight <= 1.0):
            out.append(f"population.priority_tiers.{tname}: weight {tier.weight} outside [0,1]")
    for need in pop.need_links:
        if need not in declared_needs:
            out.append(f"population.need_links: undeclared need {need!r}")
    for t in pop.personal_factors:
        if not (0.0 <= t.factor <= 1.0):
            out.append(f"population.personal_factors: factor {t.factor} outside [0,1]")
        _check_conditions(t.when, "population.personal_factors", out)

    sim = spec.simulation
    if sim.horizon < 0:
        out.append(f"simulation: horizon {sim.horizon} negative")
    for label, g in (("gamma_short", sim.gamma_short), ("gamma_long", sim.gamma_long)):
        if not (0.0 <= g < 1.0):
            out.append(f"simulation: {label} {g} outside [0,1)")
    if sim.vi_tolerance <= 0:
        out.append("simulation: vi_tolerance must be > 0")
    if sim.vi_max_iter < 1:
        out.append("simulation: vi_max_iter must be >= 1")
    if sim.state_cap < 1:
        out.append("simulation: state_cap must be >= 1")
    if sim.schedule not in ("ascending", "shuffled"):
        out.append(f"simulation: schedule {sim.schedule!r} not one of ascending|shuffled")
    agg = sim.aggregation
    if agg.epsilon < 0:
        out.append(f"simulation.aggregation: epsilon {agg.epsilon} negative")
    if not (0.0 <= agg.w <= 1.0):
        out.append(f"simulation.aggregation: w {agg.w} outside [0,1]")
    return out
