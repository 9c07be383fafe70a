"""
Knife vectors and elementary simplices of the half-step triangulation.

Knife positions are half-integers in ``[1/2, m + 1/2]``; they are stored
doubled, so a knife vector is a non-decreasing tuple of ints in ``[1, 2m + 1]``.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

from pathdiv.exceptions import InputError
from pathdiv.models.interval import Interval

KnifeVector = tuple[int, ...]


def is_valid_vertex(x: Sequence[int], m: int) -> bool:
    """True when ``x`` (doubled) lies in the knife simplex for ``m`` items."""
    previous = 1
    for position in x:
        if position < previous or position > 2 * m + 1:
            return False
        previous = position
    return True


@dataclass(frozen=True, slots=True)
class PartialDivision:
    """
    Bundles of fully visible items induced by a knife vector.

    Items sitting exactly under a knife are hidden and belong to no bundle.
    """

    knives: KnifeVector
    m: int
    bundles: tuple[Interval, ...]

    @property
    def hidden(self) -> tuple[int, ...]:
        return tuple(position // 2 for position in self.knives if position % 2 == 0)


@dataclass(frozen=True, slots=True)
class ElementarySimplex:
    """
    A chain of ``n`` knife vectors of the triangulation.

    Stored as a base vertex plus the order in which the ``n - 1`` knives take
    their single half-step (1-based knife numbers). ``vertices`` lists the
    chain in that order.
    """

    m: int
    base: KnifeVector
    steps: tuple[int, ...]
    vertices: tuple[KnifeVector, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if sorted(self.steps) != list(range(1, len(self.base) + 1)):
            raise InputError(f"Steps {self.steps} must move each of {len(self.base)} knives once")
        chain = [self.base]
        current = list(self.base)
        for knife in self.steps:
            current[knife - 1] += 1
            chain.append(tuple(current))
        for vertex in chain:
            if not is_valid_vertex(vertex, self.m):
                raise InputError(f"Vertex {list(vertex)} leaves the knife simplex for m={self.m}")
        object.__setattr__(self, "vertices", tuple(chain))

    @classmethod
    def from_vertices(cls, m: int, vertices: Sequence[Sequence[int]]) -> "ElementarySimplex":
        """
        Rebuild a simplex from its vertices (doubled), in any order.

        The vertices must form a chain in which each knife moves up by one
        half-step exactly once.
        """
        points = sorted((tuple(v) for v in vertices), key=sum)
        if not points:
            raise InputError("A simplex needs at least one vertex")
        dims = len(points[0])
        if len(points) != dims + 1 or any(len(p) != dims for p in points):
            raise InputError(f"Expected {dims + 1} vertices of length {dims}")
        steps = []
        for before, after in zip(points, points[1:], strict=False):
            moved = [k for k in range(dims) if after[k] != before[k]]
            if len(moved) != 1 or after[moved[0]] - before[moved[0]] != 1:
                raise InputError(f"Vertices {list(before)} and {list(after)} are not one half-step apart")
            steps.append(moved[0] + 1)
        return cls(m=m, base=points[0], steps=tuple(steps))

    @property
    def n(self) -> int:
        return len(self.base) + 1

    def to_document(self) -> list[list[int]]:
        return [list(v) for v in self.vertices]

    def __str__(self) -> str:
        return "<" + ", ".join(str(list(v)) for v in self.vertices) + ">"


@dataclass(frozen=True, slots=True)
class SimplexDecomposition:
    """
    Items fixed in each bundle over the whole chain (``B_j``) and the single
    contested item between bundles ``j`` and ``j + 1`` (``y^j``).
    """

    fixed: tuple[Interval, ...]
    boundary: tuple[int, ...]
