"""Exception types shared across the engine."""

from __future__ import annotations


class CapsimError(Exception):
    """Base class for all engine errors."""


class UnknownCapability(CapsimError):
    def __init__(self, tag: str):
        super().__init__(f"unknown central capability: {tag!r}")
        self.tag = tag


class ParseError(CapsimError):
    """Scenario file could not be read as the documented format."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class ValidationError(CapsimError):
    """One or more scenario invariants do not hold."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid")


class StateSpaceExplosion(CapsimError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"reachable state space exceeds cap ({count} > {cap})")
        self.count = count
        self.cap = cap


class NonConvergence(CapsimError):
    def __init__(self, max_iter: int, residual: float):
        super().__init__(
            f"value iteration did not converge in {max_iter} sweeps "
            f"(final residual {residual:.3e})"
        )
        self.max_iter = max_iter
        self.residual = residual


class OracleTooLarge(CapsimError):
    """The exhaustive finite-horizon oracle refuses problems past its size guard."""


class NoFeasibleAction(CapsimError):
    def __init__(self, state: int):
        super().__init__(f"no feasible action at state {state}")
        self.state = state


class MetricMismatch(CapsimError):
    """Two metric sets cover different action catalogs and cannot be compared."""
