"""Turn a dual Q-table into a deterministic action choice.

The aggregation operator encodes how long-term value preferences and
short-term need urgencies combine. The default, lexicographic with a small
tolerance, lets values prevail: needs only break (near-)ties in the long-term
ranking. Ties always break toward the lowest ActionId, which is the action's
declaration order in the scenario file.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import NoFeasibleAction
from .mdp import ActionId, DualQTable, StateId
from .scenario import AggregationConfig, AggregationName


@dataclass(frozen=True)
class Lexicographic:
    """Maximize long-term Q; among actions within epsilon of that maximum,
    maximize short-term Q."""

    epsilon: float = 1e-9


@dataclass(frozen=True)
class Weighted:
    """Maximize w * Q_long + (1 - w) * Q_short."""

    w: float


@dataclass(frozen=True)
class NeedConstrained:
    """Maximize short-term Q subject to Q_long >= max Q_long - epsilon.

    The constraint set always contains the long-term argmax, so this selects
    exactly as Lexicographic does; it ships as a separately named mode so
    scenario files can state the intent."""

    epsilon: float = 0.0


AggregationMode = Union[Lexicographic, Weighted, NeedConstrained]

#: Policy entry for states where no action is feasible: stay put, change nothing.
NO_OP: Optional[ActionId] = None


def mode_from_config(cfg: AggregationConfig) -> AggregationMode:
    if cfg.mode is AggregationName.WEIGHTED:
        return Weighted(w=cfg.w)
    if cfg.mode is AggregationName.NEED_CONSTRAINED:
        return NeedConstrained(epsilon=cfg.epsilon)
    return Lexicographic(epsilon=cfg.epsilon)


def mode_to_dict(mode: AggregationMode) -> dict:
    if isinstance(mode, Weighted):
        return {"mode": "weighted", "w": mode.w}
    if isinstance(mode, NeedConstrained):
        return {"mode": "need_constrained", "epsilon": mode.epsilon}
    return {"mode": "lexicographic", "epsilon": mode.epsilon}


def _constrained_pick(
    q_long: np.ndarray, q_short: np.ndarray, feasible: list[ActionId], epsilon: float
) -> ActionId:
    best_long = max(q_long[a] for a in feasible)
    candidates = [a for a in feasible if q_long[a] >= best_long - epsilon]
    best_short = max(q_short[a] for a in candidates)
    return min(a for a in candidates if q_short[a] == best_short)


def aggregate_choice(
    q: DualQTable, s: StateId, feasible: Iterable[ActionId], mode: AggregationMode
) -> ActionId:
    """Pick the action the aggregation policy prescribes at state `s`."""
    feasible = sorted(feasible)
    if not feasible:
        raise NoFeasibleAction(s)
    q_long = q.q_long.values[s]
    q_short = q.q_short.values[s]
    if isinstance(mode, Weighted):
        score = mode.w * q_long + (1.0 - mode.w) * q_short
        best = max(score[a] for a in feasible)
        return min(a for a in feasible if score[a] == best)
    epsilon = mode.epsilon
    return _constrained_pick(q_long, q_short, feasible, epsilon)


@dataclass(frozen=True)
class PolicyTable:
    """Deterministic state -> action map plus the provenance it was derived from."""

    actions: tuple[Optional[ActionId], ...]
    mode: dict
    q_digest: str

    def action_at(self, s: StateId) -> Optional[ActionId]:
        return self.actions[s]


def derive_policy(q: DualQTable, mask: np.ndarray, mode: AggregationMode) -> PolicyTable:
    """Apply aggregate_choice at every state; states with no feasible action map to NO_OP."""
    chosen: list[Optional[ActionId]] = []
    n_states, n_actions = mask.shape
    for s in range(n_states):
        feasible = [a for a in range(n_actions) if mask[s][a]]
        chosen.append(aggregate_choice(q, s, feasible, mode) if feasible else NO_OP)
    return PolicyTable(actions=tuple(chosen), mode=mode_to_dict(mode), q_digest=q.digest())
