"""Compile an (agent, scenario) pair into an explicit finite MDP and solve it.

States are reachable personal-state snapshots; actions are the scenario's
action catalog in declaration order (so ActionId is stable across compiles).
An action with feasibility f in (0, 1] branches to its effect-updated state
with probability f and self-loops with the remainder; an impossible action is
an absorbing reward-0 self-loop whose Q value is pinned at 0 (its continuation
is itself, forever). Value iteration and the exhaustive finite-horizon oracle
share those semantics so they can check each other.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

import numpy as np

from .domain import AgentProfile, HEALTH_MAX, HEALTH_MIN, Housing, PersonalState, Registration
from .errors import NonConvergence, OracleTooLarge, StateSpaceExplosion
from .scenario import (
    ActionSpec,
    EffectTarget,
    ScenarioSpec,
    STATE_TARGETS,
    feasibility,
)

StateId = int
ActionId = int


class RewardKind(str, Enum):
    SHORT = "short"
    LONG = "long"


@dataclass
class StateRegistry:
    """Dense bijection between StateIds and personal-state snapshots."""

    states: list[PersonalState] = field(default_factory=list)
    index: dict[tuple, StateId] = field(default_factory=dict)

    def intern(self, state: PersonalState) -> StateId:
        key = state.key()
        sid = self.index.get(key)
        if sid is None:
            sid = len(self.states)
            self.states.append(state)
            self.index[key] = sid
        return sid

    def __len__(self) -> int:
        return len(self.states)


@dataclass
class TransitionModel:
    """Per (state, action): successor distribution plus a possibility mask.

    rows[s][a] is a list of (successor, probability) summing to 1; impossible
    pairs are exactly [(s, 1.0)].
    """

    rows: list[list[list[tuple[StateId, float]]]]
    possible: np.ndarray  # bool, shape (S, A)

    def row(self, s: StateId, a: ActionId) -> list[tuple[StateId, float]]:
        return self.rows[s][a]


@dataclass
class DualRewardModel:
    short: np.ndarray  # shape (S, A)
    long: np.ndarray  # shape (S, A)

    def table(self, which: RewardKind) -> np.ndarray:
        return self.short if which is RewardKind.SHORT else self.long


@dataclass
class CompiledMdp:
    registry: StateRegistry
    action_names: list[str]
    transitions: TransitionModel
    rewards: DualRewardModel
    initial_state: StateId

    @property
    def n_states(self) -> int:
        return len(self.registry)

    @property
    def n_actions(self) -> int:
        return len(self.action_names)


@dataclass
class QTable:
    values: np.ndarray  # shape (S, A)
    gamma: float
    residual: float
    iterations: int


@dataclass
class DualQTable:
    q_short: QTable
    q_long: QTable

    @property
    def gammas(self) -> tuple[float, float]:
        return (self.q_short.gamma, self.q_long.gamma)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.q_short.values).tobytes())
        h.update(np.ascontiguousarray(self.q_long.values).tobytes())
        h.update(repr(self.gammas).encode())
        return h.hexdigest()[:16]


def apply_state_effects(state: PersonalState, action: ActionSpec) -> PersonalState:
    """Successor personal state after realising `action` (state-affecting rules only)."""
    health = state.health
    housing = state.housing
    registration = state.registration
    attributes = None
    for rule in action.effects:
        if rule.target not in STATE_TARGETS:
            continue
        if rule.target is EffectTarget.HEALTH_DELTA:
            health = min(HEALTH_MAX, max(HEALTH_MIN, health + int(rule.amount)))
        elif rule.target is EffectTarget.HOUSING_SET:
            housing = Housing(rule.amount)
        elif rule.target is EffectTarget.REGISTRATION_SET:
            registration = Registration(rule.amount)
        elif rule.target is EffectTarget.ATTRIBUTE_DELTA:
            if attributes is None:
                attributes = dict(state.attributes)
            current = attributes.get(rule.attribute)
            if isinstance(rule.amount, (int, float)) and not isinstance(rule.amount, bool):
                base = current if isinstance(current, (int, float)) else 0
                attributes[rule.attribute] = base + rule.amount
            else:
                attributes[rule.attribute] = rule.amount
    return PersonalState(
        health=health,
        housing=housing,
        registration=registration,
        attributes=attributes if attributes is not None else state.attributes,
    )


def compile(
    agent: AgentProfile,
    scenario: ScenarioSpec,
    resources_left: Optional[Mapping[str, Optional[int]]] = None,
    state_cap: Optional[int] = None,
) -> CompiledMdp:
    """Explore the reachability closure of the agent's state under the scenario's
    effect rules and build transition and dual-reward tables over it.

    `resources_left` fixes resource availability for the whole compile (the
    per-tick counters live in the dynamics world state, not here).
    """
    cap = state_cap if state_cap is not None else scenario.simulation.state_cap
    registry = StateRegistry()
    initial = registry.intern(agent.state)
    actions = scenario.actions
    n_actions = len(actions)

    short_rewards = np.zeros(n_actions)
    long_rewards = np.zeros(n_actions)
    for a, action in enumerate(actions):
        short_rewards[a] = action.base_short_reward + sum(
            agent.choice.urgency(need) * rel for need, rel in action.relieves.items()
        )
        long_rewards[a] = action.base_long_reward + sum(
            agent.choice.pref(dim) * imp for dim, imp in action.importance.items()
        )

    rows: list[list[list[tuple[StateId, float]]]] = []
    mask_rows: list[list[bool]] = []
    frontier = 0
    while frontier < len(registry):
        sid = frontier
        frontier += 1
        state = registry.states[sid]
        row: list[list[tuple[StateId, float]]] = []
        mask_row: list[bool] = []
        for action in actions:
            f = feasibility(agent, action, scenario, resources_left, state=state)
            if f <= 0.0:
                row.append([(sid, 1.0)])
                mask_row.append(False)
                continue
            succ_state = apply_state_effects(state, action)
            succ = registry.intern(succ_state)
            if len(registry) > cap:
                raise StateSpaceExplosion(len(registry), cap)
            if succ == sid:
                row.append([(sid, 1.0)])  # success and remainder coincide
            elif f >= 1.0:
                row.append([(succ, 1.0)])
            else:
                row.append([(succ, f), (sid, 1.0 - f)])
            mask_row.append(True)
        rows.append(row)
        mask_rows.append(mask_row)

    possible = np.array(mask_rows, dtype=bool)
    n_states = len(registry)
    short = np.zeros((n_states, n_actions))
    long = np.zeros((n_states, n_actions))
    short[possible] = np.broadcast_to(short_rewards, (n_states, n_actions))[possible]
    long[possible] = np.broadcast_to(long_rewards, (n_states, n_actions))[possible]

    return CompiledMdp(
        registry=registry,
        action_names=[a.name for a in actions],
        transitions=TransitionModel(rows=rows, possible=possible),
        rewards=DualRewardModel(short=short, long=long),
        initial_state=initial,
    )


def _flatten(mdp: CompiledMdp) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR-style flattening of the transition rows for vectorized sweeps."""
    starts = [0]
    dests: list[int] = []
    probs: list[float] = []
    for s in range(mdp.n_states):
        for a in range(mdp.n_actions):
            for d, p in mdp.transitions.rows[s][a]:
                dests.append(d)
                probs.append(p)
            starts.append(len(dests))
    return (np.array(starts), np.array(dests, dtype=np.intp), np.array(probs))


def value_iteration(
    mdp: CompiledMdp,
    which: RewardKind,
    gamma: float,
    tolerance: float = 1e-8,
    max_iter: int = 10_000,
) -> QTable:
    """Solve Q(s,a) = r(s,a) + gamma * E[max_a' Q(s',a')] to the given residual.

    Impossible actions are pinned at Q = 0: their continuation is their own
    absorbing reward-0 self-loop, so they contribute 0 to every backup.
    """
    if not (0.0 <= gamma < 1.0):
        raise ValueError(f"gamma {gamma} outside [0,1)")
    r = mdp.rewards.table(which)
    possible = mdp.transitions.possible
    starts, dests, probs = _flatten(mdp)
    shape = (mdp.n_states, mdp.n_actions)

    q = np.zeros(shape)
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        v = q.max(axis=1)
        ev = np.add.reduceat(probs * v[dests], starts[:-1]).reshape(shape)
        q_next = np.where(possible, r + gamma * ev, 0.0)
        residual = float(np.max(np.abs(q_next - q))) if q.size else 0.0
        q = q_next
        if residual <= tolerance:
            return QTable(values=q, gamma=gamma, residual=residual, iterations=iteration)
    raise NonConvergence(max_iter, residual)


def solve_dual(mdp: CompiledMdp, scenario: ScenarioSpec) -> DualQTable:
    sim = scenario.simulation
    return DualQTable(
        q_short=value_iteration(mdp, RewardKind.SHORT, sim.gamma_short, sim.vi_tolerance, sim.vi_max_iter),
        q_long=value_iteration(mdp, RewardKind.LONG, sim.gamma_long, sim.vi_tolerance, sim.vi_max_iter),
    )


ORACLE_MAX_CELLS = 100
ORACLE_MAX_HORIZON = 10_000


def enumerate_horizon(
    mdp: CompiledMdp, which: RewardKind, gamma: float, horizon: int
) -> QTable:
    """Exact finite-horizon optimal Q by exhaustive backward induction.

    Independent of value_iteration on purpose: plain nested loops over the
    transition rows, no shared numerics. Horizon 0 returns the reward table.
    """
    if mdp.n_states * mdp.n_actions > ORACLE_MAX_CELLS or horizon > ORACLE_MAX_HORIZON:
        raise OracleTooLarge(
            f"oracle guard: {mdp.n_states} states x {mdp.n_actions} actions, horizon {horizon}"
        )
    r = mdp.rewards.table(which)
    possible = mdp.transitions.possible
    q = [[float(r[s][a]) if possible[s][a] else 0.0 for a in range(mdp.n_actions)] for s in range(mdp.n_states)]
    for _ in range(horizon):
        v = [max(q[s]) for s in range(mdp.n_states)]
        q_next = []
        for s in range(mdp.n_states):
            row = []
            for a in range(mdp.n_actions):
                if not possible[s][a]:
                    row.append(0.0)
                    continue
                expected = sum(p * v[d] for d, p in mdp.transitions.rows[s][a])
                row.append(float(r[s][a]) + gamma * expected)
            q_next.append(row)
        q = q_next
    return QTable(values=np.array(q), gamma=gamma, residual=0.0, iterations=horizon)


def tail_bound_horizon(gamma: float, rmax: float, target: float) -> int:
    """Smallest H with gamma^H * rmax / (1 - gamma) <= target."""
    if rmax <= 0 or gamma == 0.0:
        return 1
    import math

    h = math.log(target * (1.0 - gamma) / rmax) / math.log(gamma)
    return max(1, math.ceil(h))


def bellman_residual(mdp: CompiledMdp, which: RewardKind, gamma: float, q: np.ndarray) -> float:
    """One re-check sweep: how far `q` is from satisfying its own Bellman equation."""
    r = mdp.rewards.table(which)
    possible = mdp.transitions.possible
    starts, dests, probs = _flatten(mdp)
    v = q.max(axis=1)
    ev = np.add.reduceat(probs * v[dests], starts[:-1]).reshape(q.shape)
    q_next = np.where(possible, r + gamma * ev, 0.0)
    return float(np.max(np.abs(q_next - q))) if q.size else 0.0


def dump(mdp: CompiledMdp) -> str:
    """Readable dump of a compiled MDP for diffing and oracle replay."""
    lines = [f"states: {mdp.n_states}", f"actions: {mdp.n_actions}", ""]
    for sid, state in enumerate(mdp.registry.states):
        d = state.to_dict()
        attrs = "" if not d["attributes"] else f" attributes={d['attributes']}"
        lines.append(
            f"state {sid}: health={d['health']} housing={d['housing']} registration={d['registration']}{attrs}"
        )
    lines.append("")
    for a, name in enumerate(mdp.action_names):
        lines.append(f"action {a}: {name}")
    lines.append("")
    for s in range(mdp.n_states):
        for a in range(mdp.n_actions):
            flag = "possible" if mdp.transitions.possible[s][a] else "impossible"
            trans = " ".join(f"->{d}@{p:.12g}" for d, p in mdp.transitions.rows[s][a])
            lines.append(
                f"(s={s}, a={a}) {flag} {trans} r_short={mdp.rewards.short[s][a]:.12g} "
                f"r_long={mdp.rewards.long[s][a]:.12g}"
            )
    lines.append(f"\ninitial: {mdp.initial_state}")
    return "\n".join(lines)


def make_mdp_from_tables(
    transitions: list[list[list[tuple[int, float]]]],
    short: np.ndarray,
    long: np.ndarray,
    possible: Optional[np.ndarray] = None,
    initial_state: int = 0,
    action_names: Optional[list[str]] = None,
) -> CompiledMdp:
    """Assemble a CompiledMdp directly from tables (test harnesses, random MDPs)."""
    n_states = len(transitions)
    n_actions = len(transitions[0]) if n_states else 0
    if possible is None:
        possible = np.ones((n_states, n_actions), dtype=bool)
    registry = StateRegistry()
    for i in range(n_states):
        registry.intern(
            PersonalState(
                health=HEALTH_MIN,
                housing=Housing.ROOFLESS,
                registration=Registration.REGISTERED,
                attributes={"synthetic_state": i},
            )
        )
    return CompiledMdp(
        registry=registry,
        action_names=action_names or [f"a{i}" for i in range(n_actions)],
        transitions=TransitionModel(rows=transitions, possible=np.asarray(possible, dtype=bool)),
        rewards=DualRewardModel(short=np.asarray(short, dtype=float), long=np.asarray(long, dtype=float)),
        initial_state=initial_state,
    )
