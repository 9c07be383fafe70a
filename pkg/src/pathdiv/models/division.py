"""
Divisions of the path into ordered connected bundles.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from pathdiv.exceptions import InputError
from pathdiv.models.interval import EMPTY, Interval
from pathdiv.schemas import DivisionDocument, IntervalDocument


@dataclass(frozen=True, slots=True)
class Division:
    """
    A partition of items ``1..m`` into ``n`` connected bundles, left to right.

    Bundles may be empty. Bundle indices are 1-based in every accessor that
    takes one; ``bundles`` itself is an ordinary tuple.
    """

    bundles: tuple[Interval, ...]
    m: int

    def __post_init__(self) -> None:
        if not self.bundles:
            raise InputError("A division needs at least one bundle")
        expected = 1
        for index, bundle in enumerate(self.bundles, start=1):
            if bundle.is_empty:
                continue
            if bundle.lo != expected:
                raise InputError(
                    f"Bundle {index} {bundle} should start at item {expected}; "
                    "bundles must be disjoint, ordered and cover the path"
                )
            expected = bundle.hi + 1
        if expected != self.m + 1:
            raise InputError(f"Division covers items up to {expected - 1}, path has {self.m}")

    @classmethod
    def from_items(cls, parts: Iterable[Iterable[int]], m: int) -> "Division":
        """Build from explicit item collections, each of which must be a run."""
        bundles = []
        for part in parts:
            items = sorted(set(part))
            if not items:
                bundles.append(EMPTY)
                continue
            if items[-1] - items[0] + 1 != len(items):
                raise InputError(f"Items {items} are not connected")
            bundles.append(Interval(items[0], items[-1]))
        return cls(tuple(bundles), m)

    @classmethod
    def from_document(cls, doc: Sequence[IntervalDocument | None], m: int) -> "Division":
        bundles = tuple(EMPTY if d is None else Interval(d.lo, d.hi) for d in doc)
        return cls(bundles, m)

    def to_document(self) -> DivisionDocument:
        return [None if b.is_empty else IntervalDocument(lo=b.lo, hi=b.hi) for b in self.bundles]

    @property
    def n(self) -> int:
        return len(self.bundles)

    def bundle(self, j: int) -> Interval:
        """Bundle ``j`` (1-based)."""
        if not 1 <= j <= len(self.bundles):
            raise InputError(f"Bundle index {j} out of range 1..{len(self.bundles)}")
        return self.bundles[j - 1]

    def __str__(self) -> str:
        return "(" + ", ".join(str(b) for b in self.bundles) + ")"
