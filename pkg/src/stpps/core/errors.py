"""Exception types shared by every module."""

from __future__ import annotations

from typing import Any


class InvalidInput(ValueError):
    """Malformed or out-of-contract input."""


class BudgetExceeded(InvalidInput):
    """An exhaustive routine was asked to run above its size bound."""


class InternalInconsistency(RuntimeError):
    """A computed object failed its own post-verification."""


class Infeasible(Exception):
    """No solution exists; ``certificate`` explains why."""

    def __init__(self, message: str, certificate: Any = None) -> None:
        super().__init__(message)
        self.certificate = certificate
