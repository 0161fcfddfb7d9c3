from dataclasses import dataclass
from typing import Dict, Iterator, List

from haarlab.checks import StructuralError


@dataclass(frozen=True, order=True)
class IntervalId:
    """
    Address of the dyadic interval [index 2^-level, (index+1) 2^-level) inside [0,1).

    Ordering is (level, index), which is also the tie-breaking order used for
    every argmax reported by the library.
    """
    level: int
    index: int

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.index < 2 ** self.level:
            raise StructuralError(f"No dyadic interval at level {self.level} with index {self.index}")

    @property
    def length(self) -> float:
        return 2.0 ** -self.level

    @property
    def left(self) -> float:
        return self.index * self.length

    @property
    def right(self) -> float:
        return (self.index + 1) * self.length

    @property
    def parent(self) -> "IntervalId":
        if self.level == 0:
            raise StructuralError("[0,1) has no parent in the tree")
        return IntervalId(self.level - 1, self.index // 2)

    @property
    def minus(self) -> "IntervalId":
        """Left half I_-."""
        return IntervalId(self.level + 1, 2 * self.index)

    @property
    def plus(self) -> "IntervalId":
        """Right half I_+."""
        return IntervalId(self.level + 1, 2 * self.index + 1)

    def children(self, depth: int) -> List["IntervalId"]:
        self.check_has_children(depth)
        return [self.minus, self.plus]

    def descendants(self, generations: int) -> List["IntervalId"]:
        """
        D_k(L): the dyadic subintervals of length 2^-k |L|, left to right.
        """
        start = self.index << generations
        return [IntervalId(self.level + generations, start + j) for j in range(2 ** generations)]

    def subtree(self, depth: int, max_level: int = None) -> Iterator["IntervalId"]:
        """
        D(L) restricted to the finite tree, top-down; `max_level` defaults to the
        grid depth.
        """
        max_level = depth if max_level is None else max_level
        for generations in range(0, max_level - self.level + 1):
            yield from self.descendants(generations)

    def contains(self, other: "IntervalId") -> bool:
        if other.level < self.level:
            return False
        return other.index >> (other.level - self.level) == self.index

    def cells(self, depth: int) -> slice:
        """
        Slice of the depth-N cells that make up this interval.
        """
        self.check_in_grid(depth)
        width = 2 ** (depth - self.level)
        return slice(self.index * width, (self.index + 1) * width)

    def check_in_grid(self, depth: int) -> None:
        if self.level > depth:
            raise StructuralError(f"Interval {self} is deeper than the grid depth {depth}")

    def check_has_children(self, depth: int) -> None:
        if self.level >= depth:
            raise StructuralError(f"Interval {self} is a leaf of the depth {depth} grid and has no children")

    def to_json(self) -> Dict[str, int]:
        return {"level": self.level, "index": self.index}

    @classmethod
    def from_json(cls, data: Dict[str, int]) -> "IntervalId":
        return cls(int(data["level"]), int(data["index"]))

    def __str__(self):
        return f"[{self.index}/2^{self.level}, {self.index + 1}/2^{self.level})"


ROOT = IntervalId(0, 0)


def iter_intervals(max_level: int) -> Iterator[IntervalId]:
    """All intervals with level 0..max_level, level by level."""
    for level in range(max_level + 1):
        for index in range(2 ** level):
            yield IntervalId(level, index)
