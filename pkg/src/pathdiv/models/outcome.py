"""
Search modes, color graphs and search outcomes.
"""

import enum
from collections.abc import Iterable
from dataclasses import dataclass, field

from pathdiv.models.simplex import ElementarySimplex
from pathdiv.schemas import Assignment, WitnessDocument


class SearchMode(str, enum.Enum):
    """Which EF1 guarantee a search targets."""

    PLAIN = "plain"
    SECRETIVE = "secretive"
    EXTRA = "extra"


@dataclass(frozen=True)
class BipartiteColorGraph:
    """
    Agents' colorings on the left, colors on the right; ``(i, j)`` is an edge
    when color ``j`` is in agent ``i``'s color set at some vertex of a simplex.
    """

    left: tuple[int, ...]
    right: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def adjacency(
        self,
        exclude_left: Iterable[int] = (),
        exclude_right: Iterable[int] = (),
    ) -> dict[int, list[int]]:
        """Adjacency lists in canonical order, with some vertices removed."""
        drop_left = set(exclude_left)
        drop_right = set(exclude_right)
        return {
            i: [j for j in self.right if j not in drop_right and (i, j) in self.edges]
            for i in self.left
            if i not in drop_left
        }

    def has_edge(self, agent: int, color: int) -> bool:
        return (agent, color) in self.edges


@dataclass(frozen=True)
class SearchOutcome:
    """
    An accepted simplex with its witness.

    ``permutation`` is set for plain searches (owner to color). The secretive
    search fills ``by_excluded_bundle`` (bundle taken by the secretive agent
    to the assignment of the others); the extra search fills
    ``by_departing_agent``.
    """

    mode: SearchMode
    simplex: ElementarySimplex
    index: int | None
    scanned: int
    permutation: Assignment | None = None
    by_excluded_bundle: dict[int, Assignment] = field(default_factory=dict)
    by_departing_agent: dict[int, Assignment] = field(default_factory=dict)

    def to_witness_document(self) -> WitnessDocument:
        if self.mode is SearchMode.PLAIN:
            return WitnessDocument(permutation=self.permutation)
        if self.mode is SearchMode.SECRETIVE:
            return WitnessDocument(by_excluded_bundle=self.by_excluded_bundle)
        return WitnessDocument(by_departing_agent=self.by_departing_agent)
