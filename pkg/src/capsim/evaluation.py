"""Evaluative indicators computed from run reports, and policy-comparison deltas.

Deprivation is measured at the final tick (the policy's end-state view);
functioning rates aggregate over the whole run. Per-tick series stay in the
run report for anyone who wants the trajectory view. "Discrimination within
institutional frameworks" is deliberately not collapsed into a scalar: the
norm-value ledger plus per-group deprivation breakdowns carry that signal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from .domain import AgentProfile, CentralCapability
from .dynamics import RunReport, WorldState
from .errors import MetricMismatch
from .scenario import ScenarioSpec, apply_norm_overrides, feasibility


class CapabilityStatus(str, Enum):
    ENABLED = "enabled"
    DEPRIVED = "deprived"
    NOT_MODELLED = "not_modelled"


def capability_status(
    agent: AgentProfile, scenario: ScenarioSpec, world: Optional[WorldState] = None
) -> dict[CentralCapability, CapabilityStatus]:
    """Per capability: enabled iff some feasible action enables it; capabilities no
    action enables at all are reported NotModelled and excluded from ratios."""
    counters = world.resource_counters if world is not None else None
    status = {c: CapabilityStatus.NOT_MODELLED for c in CentralCapability}
    for action in scenario.actions:
        if not action.enables:
            continue
        feasible = feasibility(agent, action, scenario, counters) > 0.0
        for cap in action.enables:
            if feasible:
                status[cap] = CapabilityStatus.ENABLED
            elif status[cap] is CapabilityStatus.NOT_MODELLED:
                status[cap] = CapabilityStatus.DEPRIVED
    return status


@dataclass
class CapabilityMetrics:
    deprivation_ratio: float
    functioning_rate: float


@dataclass
class EquityMetrics:
    """The per-run evaluation bundle policy variants are compared on."""

    scenario_name: str
    seed: int
    horizon: int
    n_agents: int
    catalog: tuple[str, ...]  # action names; guards comparability
    capabilities: dict[CentralCapability, CapabilityMetrics]
    not_modelled: tuple[CentralCapability, ...]
    final_distributions: dict
    expenses: dict[str, float]
    norm_ledger: dict[str, dict]
    group_deprivation: dict  # capability -> grouping -> group -> ratio
    series: dict

    def to_dict(self) -> dict:
        return {
            "scenario_name": self.scenario_name,
            "seed": self.seed,
            "horizon": self.horizon,
            "n_agents": self.n_agents,
            "catalog": list(self.catalog),
            "capabilities": {
                c.value: {
                    "deprivation_ratio": m.deprivation_ratio,
                    "functioning_rate": m.functioning_rate,
                }
                for c, m in sorted(self.capabilities.items())
            },
            "not_modelled": [c.value for c in self.not_modelled],
            "final_distributions": self.final_distributions,
            "expenses": dict(sorted(self.expenses.items())),
            "norm_ledger": {k: v for k, v in sorted(self.norm_ledger.items())},
            "group_deprivation": self.group_deprivation,
            "series": self.series,
        }


def metrics_to_json(metrics: EquityMetrics) -> str:
    return json.dumps(metrics.to_dict(), sort_keys=True, indent=2) + "\n"


def compute_metrics(report: RunReport, scenario: ScenarioSpec) -> EquityMetrics:
    """Reduce a run report to the evaluative indicators.

    `scenario` is the base scenario the run was launched from; the report's
    norm overrides are re-applied here so feasibility is judged under the
    same regime the agents lived under.
    """
    known = {n.id for n in scenario.norms}
    applicable = {k: v for k, v in report.norm_overrides.items() if k in known}
    active = apply_norm_overrides(scenario, applicable) if applicable else scenario

    agents = report.final_agents
    n = len(agents)
    modelled = sorted({c for a in active.actions for c in a.enables}, key=lambda c: c.value)
    not_modelled = tuple(c for c in CentralCapability if c not in set(modelled))

    # Deprivation at the final tick, over end-of-run agent states with
    # tick-start resource availability (capacities reset every tick).
    statuses = {a.id: capability_status(a, active) for a in agents}
    deprived_counts = {c: 0 for c in modelled}
    for st in statuses.values():
        for c in modelled:
            if st[c] is CapabilityStatus.DEPRIVED:
                deprived_counts[c] += 1

    # Functionings over the whole run: who realised at least one enabling action.
    realised_by: dict[CentralCapability, set[int]] = {c: set() for c in modelled}
    for e in report.events:
        if e.realised and e.chosen is not None:
            for c in active.actions[e.chosen].enables:
                realised_by[c].add(e.agent_id)

    capabilities = {
        c: CapabilityMetrics(
            deprivation_ratio=deprived_counts[c] / n,
            functioning_rate=len(realised_by[c]) / n,
        )
        for c in modelled
    }

    group_deprivation: dict = {}
    for c in modelled:
        by_reg: dict[str, list[int]] = {}
        by_housing: dict[str, list[int]] = {}
        for a in agents:
            dep = 1 if statuses[a.id][c] is CapabilityStatus.DEPRIVED else 0
            by_reg.setdefault(a.state.registration.value, []).append(dep)
            by_housing.setdefault(a.state.housing.value, []).append(dep)
        group_deprivation[c.value] = {
            "by_registration": {g: sum(v) / len(v) for g, v in sorted(by_reg.items())},
            "by_housing": {g: sum(v) / len(v) for g, v in sorted(by_housing.items())},
        }

    norm_ledger = {
        norm.id: {
            "kind": norm.kind.value,
            "promotes": sorted(d.value for d in norm.promotes),
            "demotes": sorted(d.value for d in norm.demotes),
            "activations": report.norm_activations.get(norm.id, 0),
            "overridden": report.norm_overrides.get(norm.id),
        }
        for norm in scenario.norms
    }
    # Norms dropped by an override still belong in the ledger, with zero activity.
    for norm_id, enabled in report.norm_overrides.items():
        if norm_id not in norm_ledger:
            norm_ledger[norm_id] = {
                "kind": None,
                "promotes": [],
                "demotes": [],
                "activations": 0,
                "overridden": enabled,
            }

    return EquityMetrics(
        scenario_name=report.scenario_name,
        seed=report.seed,
        horizon=report.horizon,
        n_agents=n,
        catalog=tuple(a.name for a in active.actions),
        capabilities=capabilities,
        not_modelled=not_modelled,
        final_distributions=report.state_series[-1],
        expenses={p.value: v for p, v in report.expenses.items()},
        norm_ledger=norm_ledger,
        group_deprivation=group_deprivation,
        series={
            "states": report.state_series,
            "capabilities": report.capability_series,
        },
    )


@dataclass
class DeltaReport:
    """Signed differences (b - a) between two metric bundles."""

    a_label: str
    b_label: str
    capability_deltas: dict[str, dict]
    expense_deltas: dict[str, float]
    distribution_deltas: dict
    field_notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "a": self.a_label,
            "b": self.b_label,
            "capability_deltas": self.capability_deltas,
            "expense_deltas": dict(sorted(self.expense_deltas.items())),
            "distribution_deltas": self.distribution_deltas,
            "notes": self.field_notes,
        }


def delta_to_json(delta: DeltaReport) -> str:
    return json.dumps(delta.to_dict(), sort_keys=True, indent=2) + "\n"


def _flag(deprivation_delta: float) -> str:
    if deprivation_delta < 0:
        return "improved"
    if deprivation_delta > 0:
        return "regressed"
    return "unchanged"


def compare(a: EquityMetrics | Mapping, b: EquityMetrics | Mapping) -> DeltaReport:
    """Per-metric deltas between baseline `a` and variant `b`.

    Accepts EquityMetrics or their dict form (so CLI metric files compare too).
    Raises MetricMismatch when the two cover different action catalogs or
    capability sets.
    """
    da = a.to_dict() if isinstance(a, EquityMetrics) else dict(a)
    db = b.to_dict() if isinstance(b, EquityMetrics) else dict(b)
    if list(da["catalog"]) != list(db["catalog"]):
        raise MetricMismatch(f"action catalogs differ: {da['catalog']} vs {db['catalog']}")
    caps_a = set(da["capabilities"])
    caps_b = set(db["capabilities"])
    if caps_a != caps_b:
        raise MetricMismatch(f"capability sets differ: {sorted(caps_a)} vs {sorted(caps_b)}")

    capability_deltas = {}
    for cap in sorted(caps_a):
        ddep = db["capabilities"][cap]["deprivation_ratio"] - da["capabilities"][cap]["deprivation_ratio"]
        dfun = db["capabilities"][cap]["functioning_rate"] - da["capabilities"][cap]["functioning_rate"]
        capability_deltas[cap] = {
            "deprivation_delta": ddep,
            "functioning_delta": dfun,
            "flag": _flag(ddep),
        }
    payers = sorted(set(da["expenses"]) | set(db["expenses"]))
    expense_deltas = {p: db["expenses"].get(p, 0.0) - da["expenses"].get(p, 0.0) for p in payers}

    distribution_deltas = {}
    for dim in ("health", "housing", "registration"):
        da_dist = da["final_distributions"][dim]
        db_dist = db["final_distributions"][dim]
        keys = sorted(set(da_dist) | set(db_dist))
        distribution_deltas[dim] = {k: db_dist.get(k, 0.0) - da_dist.get(k, 0.0) for k in keys}

    return DeltaReport(
        a_label=f"{da['scenario_name']}@seed={da['seed']}",
        b_label=f"{db['scenario_name']}@seed={db['seed']}",
        capability_deltas=capability_deltas,
        expense_deltas=expense_deltas,
        distribution_deltas=distribution_deltas,
    )
