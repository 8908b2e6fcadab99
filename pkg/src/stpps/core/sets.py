"""Bitset helpers and the ground set type."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import InvalidInput

MAX_N = 64


def members(mask: int) -> Iterator[int]:
    """Yield the element indices of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def size(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """Index of the smallest element; -1 for the empty set."""
    return (mask & -mask).bit_length() - 1


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` in increasing integer order, ∅ first."""
    elems = list(members(mask))
    for code in range(1 << len(elems)):
        sub = 0
        for i, e in enumerate(elems):
            if code >> i & 1:
                sub |= 1 << e
        yield sub


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple[str, ...]
    s_index: Optional[int] = None
    t_index: Optional[int] = None

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_N:
            raise InvalidInput(f"ground set size must lie in [1, {MAX_N}], got {self.n}")
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.labels) != self.n:
            raise InvalidInput(f"expected {self.n} labels, got {len(self.labels)}")
        if len(set(self.labels)) != self.n:
            raise InvalidInput("labels must be distinct")
        for name in ("s_index", "t_index"):
            v = getattr(self, name)
            if v is not None and not 0 <= v < self.n:
                raise InvalidInput(f"{name}={v} is outside the ground set")
        if self.s_index is not None and self.s_index == self.t_index:
            raise InvalidInput("terminals s and t must differ")

    @classmethod
    def indexed(cls, n: int, s: Optional[int] = None, t: Optional[int] = None) -> GroundSet:
        return cls(n, tuple(str(i) for i in range(n)), s, t)

    @classmethod
    def from_labels(
        cls, labels: Sequence[str], s: Optional[str] = None, t: Optional[str] = None
    ) -> GroundSet:
        labels = tuple(labels)
        pos = {x: i for i, x in enumerate(labels)}
        try:
            si = pos[s] if s is not None else None
            ti = pos[t] if t is not None else None
        except KeyError as exc:
            raise InvalidInput(f"unknown terminal label {exc.args[0]!r}") from None
        return cls(len(labels), labels, si, ti)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def has_terminals(self) -> bool:
        return self.s_index is not None and self.t_index is not None

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidInput(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(x) for x in labels)

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in members(mask)]

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask >> self.n:
            raise InvalidInput(f"set {mask:#b} is not contained in the ground set")
