"""
Exception hierarchy for the engine.

Everything derives from ``DomainError`` (itself a ``ValueError``) so callers
can catch one type; the CLI maps it onto exit code 65.
"""
from typing import Optional


class DomainError(ValueError):
    """An input violates a mathematical precondition or a model invariant."""


class ScenarioError(DomainError):
    """A scenario document failed to parse or validate."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field:
            location.append(f"field '{field}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(f"{prefix}{message}")


class SingularMarketError(DomainError):
    """Supply and demand slopes cancel (b + d = 0): no unique equilibrium."""


class AllocationError(DomainError):
    """The scenario cannot be allocated (overfunding, a level with zero performance)."""


class LedgerCorruptError(DomainError):
    """The hash chain failed verification."""

    def __init__(self, seq: int, reason: str):
        self.seq = seq
        self.reason = reason
        super().__init__(f"Ledger corrupt at seq={seq}: {reason}")
