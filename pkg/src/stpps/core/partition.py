"""Set partitions of ``{0, …, n-1}`` stored as canonical tuples of bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput
from .sets import GroundSet, mask_of, members


def _canonical(blocks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(blocks, key=lambda b: b & -b))


@dataclass(frozen=True)
class Partition:
    """Blocks are sorted by their smallest element, so equality is structural."""

    n: int
    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        blocks = _canonical(self.blocks)
        seen = 0
        for b in blocks:
            if b <= 0:
                raise InvalidInput("partition blocks must be nonempty")
            if b & seen:
                raise InvalidInput("partition blocks must be disjoint")
            seen |= b
        if seen != (1 << self.n) - 1:
            raise InvalidInput("partition blocks must cover the ground set")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, n: int, blocks: Iterable[Iterable[int]]) -> Partition:
        return cls(n, tuple(mask_of(b) for b in blocks))

    @classmethod
    def whole(cls, n: int) -> Partition:
        return cls(n, ((1 << n) - 1,))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(n, tuple(1 << i for i in range(n)))

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.blocks)

    def __contains__(self, block: object) -> bool:
        return block in self.blocks

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def block_of(self, v: int) -> int:
        for b in self.blocks:
            if b >> v & 1:
                return b
        raise InvalidInput(f"element {v} is outside the ground set")

    def is_st_separating(self, s: int, t: int) -> bool:
        return self.block_of(s) != self.block_of(t)

    def as_lists(self) -> list[list[int]]:
        return [list(members(b)) for b in self.blocks]

    def to_text(self, labels: Sequence[str] | None = None) -> str:
        names = labels if labels is not None else [str(i) for i in range(self.n)]
        return "|".join(",".join(names[i] for i in members(b)) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str, ground: GroundSet) -> Partition:
        text = text.strip()
        if not text:
            raise InvalidInput("empty partition text")
        blocks = []
        for chunk in text.split("|"):
            names = [x.strip() for x in chunk.split(",") if x.strip()]
            if not names:
                raise InvalidInput(f"empty block in partition text {text!r}")
            idx = [ground.index(x) for x in names]
            b = mask_of(idx)
            if b.bit_count() != len(idx):
                raise InvalidInput(f"repeated element in block {chunk!r}")
            blocks.append(b)
        return cls(ground.n, tuple(blocks))

    def __repr__(self) -> str:
        return f"Partition({self.to_text()})"


def is_st_separating(p: Partition, s: int, t: int) -> bool:
    if s == t:
        raise InvalidInput("terminals must differ")
    return p.is_st_separating(s, t)
