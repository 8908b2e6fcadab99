"""Result types shared between the solver, sequence, k-partition and reference code."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import InvalidInput, Partition, Value


@dataclass(frozen=True)
class MinimizationResult:
    minimizer: Union[int, Partition]
    value: Value
    evaluations: int = 0
    backend: str = "exhaustive"


@dataclass(frozen=True)
class Segment:
    """One linear piece ``λ ↦ value − size·λ`` of a lower envelope."""

    partition: Partition
    value: Fraction

    @property
    def slope(self) -> int:
        return -len(self.partition)

    def at(self, lam: Fraction) -> Fraction:
        return self.value - len(self.partition) * lam


@dataclass(frozen=True)
class PiecewiseLinearCurve:
    """Concave piecewise-linear curve; segment ``i`` spans ``[λ_i, λ_{i+1}]``."""

    mode: str
    breakpoints: tuple[Fraction, ...]
    segments: tuple[Segment, ...]

    def __post_init__(self) -> None:
        if len(self.segments) != len(self.breakpoints) + 1:
            raise InvalidInput("a curve needs one more segment than breakpoints")

    def __call__(self, lam: object) -> Fraction:
        lam = Fraction(lam)
        return self.segments[bisect_left(self.breakpoints, lam)].at(lam)

    @property
    def attainers(self) -> list[Partition]:
        return [seg.partition for seg in self.segments]

    def rows(self) -> list[tuple[Fraction, Fraction, int, int]]:
        """``(λ, g(λ), left slope, right slope)`` per breakpoint."""
        out = []
        for i, lam in enumerate(self.breakpoints):
            left, right = self.segments[i], self.segments[i + 1]
            out.append((lam, left.at(lam), left.slope, right.slope))
        return out


@dataclass(frozen=True)
class Step:
    """How ``partitions[j+1]`` arises from ``partitions[j]``.

    ``kind`` is ``"refinement"`` (refined block ``x``) or ``"st_refinement"``
    (along ``(x, y)``).
    """

    kind: str
    x: int
    y: Optional[int] = None


@dataclass(frozen=True)
class PartitionSequence:
    kind: str
    partitions: tuple[Partition, ...]
    critical_values: tuple[Fraction, ...]
    steps: tuple[Step, ...]
    s: Optional[int] = None
    t: Optional[int] = None

    def __len__(self) -> int:
        return len(self.partitions)

    @property
    def sizes(self) -> list[int]:
        return [len(p) for p in self.partitions]


@dataclass(frozen=True)
class KPartitionResult:
    partition: Partition
    value: Value
    mode: str
    branch: Optional[str] = None
    candidates: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
