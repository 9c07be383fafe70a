"""
Connected bundles of the item path.
"""

from collections.abc import Iterator
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Interval:
    """
    A run of consecutive items ``lo..hi`` (1-based, inclusive).

    Any ``lo > hi`` denotes the empty bundle and is normalized to ``(1, 0)``,
    so all empty intervals compare equal. The empty bundle counts as connected.
    """

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi and (self.lo, self.hi) != (1, 0):
            object.__setattr__(self, "lo", 1)
            object.__setattr__(self, "hi", 0)

    @classmethod
    def empty(cls) -> "Interval":
        return EMPTY

    @classmethod
    def single(cls, item: int) -> "Interval":
        return cls(item, item)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __contains__(self, item: object) -> bool:
        return isinstance(item, int) and self.lo <= item <= self.hi

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        if self.is_empty:
            return "{}"
        if self.lo == self.hi:
            return f"{{{self.lo}}}"
        return f"{{{self.lo}..{self.hi}}}"

    def without(self, item: int) -> "Interval":
        """
        Remove an end item; items outside the interval leave it unchanged.

        Raises ValueError for an inner item, which would disconnect the bundle.
        """
        if item not in self:
            return self
        if item == self.lo:
            return Interval(self.lo + 1, self.hi)
        if item == self.hi:
            return Interval(self.lo, self.hi - 1)
        raise ValueError(f"Removing item {item} disconnects {self}")

    def extend(self, item: int) -> "Interval":
        """Add an item that is inside or adjacent to the interval."""
        if self.is_empty:
            return Interval.single(item)
        if item in self:
            return self
        if item == self.lo - 1:
            return Interval(item, self.hi)
        if item == self.hi + 1:
            return Interval(self.lo, item)
        raise ValueError(f"Item {item} is not adjacent to {self}")

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def to_document(self) -> dict[str, int] | None:
        """JSON form: ``{"lo": a, "hi": b}`` or ``None`` when empty."""
        if self.is_empty:
            return None
        return {"lo": self.lo, "hi": self.hi}


EMPTY = Interval(1, 0)
