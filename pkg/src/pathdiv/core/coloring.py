"""
Virtual valuations and colorings of triangulation vertices.

Each agent is pessimistic about getting the left-most boundary item of a
bundle and optimistic about the right-most one. An agent colors a vertex
with every bundle index maximizing its virtual value among the pieces of
positive length; the owner of a vertex picks one color for it.
"""

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from pathdiv.config import get_settings
from pathdiv.core.simplex import (
    boundary_items,
    bundle_at,
    enumerate_vertices,
    has_length,
    owner_label,
    vertex_count,
)
from pathdiv.exceptions import InputError
from pathdiv.logging import TraceSink, get_logger
from pathdiv.models.instance import ZERO, Instance
from pathdiv.models.interval import Interval
from pathdiv.models.simplex import KnifeVector, is_valid_vertex

logger = get_logger("coloring")


@dataclass(frozen=True, slots=True)
class ColorSet:
    """Agent ``agent``'s favourite bundle indices at ``vertex``."""

    vertex: KnifeVector
    agent: int
    colors: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class PropernessViolation:
    vertex: KnifeVector
    agent: int
    color: int


def virtual_value(inst: Instance, agent: int, x: Sequence[int], j: int) -> Fraction:
    """
    ``hat v_i(x, j)``, agent ``agent``'s estimate of bundle ``j`` at vertex ``x``.

    The bundle count is ``len(x) + 1``, which may differ from ``inst.n`` when
    an extra agent takes part.

    An interior bundle with no visible item is worth 0 only when its knives
    are at most half a step apart. Knives resting on two adjacent items hide
    both of them from an empty bundle, which is valued like any bundle
    holding neither boundary item: ``v^-({l_j, r_j})``.
    """
    m = inst.m
    n = len(x) + 1
    if not 1 <= j <= n:
        raise InputError(f"Bundle index {j} out of range 1..{n}")
    if not is_valid_vertex(x, m):
        raise InputError(f"Knife vector {list(x)} is not in the knife simplex for m={m}")
    bundle = bundle_at(x, j, m)
    if j == 1:
        return inst.value(agent, bundle)
    left, right = boundary_items(x, j, m)
    if bundle.is_empty:
        if left >= right:
            return ZERO
        return inst.up_to_one_value(agent, Interval(left, right))
    if j == n:
        return inst.value(agent, bundle.without(left))

    has_left = left in bundle
    has_right = right in bundle
    if has_left and has_right:
        return inst.value(agent, bundle.without(left))
    if has_left:
        return inst.up_to_one_value(agent, bundle.extend(right))
    if has_right:
        return inst.value(agent, bundle)
    return inst.up_to_one_value(agent, bundle.extend(left).extend(right))


def agent_coloring(inst: Instance, agent: int, x: Sequence[int]) -> ColorSet:
    """
    All bundle indices maximizing the agent's virtual value over the pieces
    of positive length. Knives span ``2m`` half-steps, so some piece always
    qualifies.
    """
    m = inst.m
    if not is_valid_vertex(x, m):
        raise InputError(f"Knife vector {list(x)} is not in the knife simplex for m={m}")
    candidates = [j for j in range(1, len(x) + 2) if has_length(x, j, m)]
    values = {j: virtual_value(inst, agent, x, j) for j in candidates}
    best = max(values.values())
    return ColorSet(
        vertex=tuple(x),
        agent=agent,
        colors=tuple(j for j in candidates if values[j] == best),
    )


def aggregated_color(inst: Instance, x: Sequence[int]) -> int:
    """The owner's smallest favourite bundle index at ``x``."""
    owner = owner_label(x, len(x) + 1)
    return min(agent_coloring(inst, owner, x).colors)


class ColoringCache:
    """
    Memoized colorings for one instance, shared by scan workers.

    Entries are pure functions of their key, so concurrent misses only
    repeat work.

    With a trace, ``color`` writes one owner record per vertex and
    ``colors`` one agent record per ``(agent, vertex)`` it computes first.
    """

    def __init__(self, inst: Instance, trace: TraceSink | None = None):
        self.inst = inst
        self.trace = trace
        self._sets: dict[tuple[int, KnifeVector], tuple[int, ...]] = {}
        self._colors: dict[KnifeVector, int] = {}

    def _lookup(self, agent: int, x: KnifeVector) -> tuple[tuple[int, ...], bool]:
        key = (agent, x)
        found = self._sets.get(key)
        if found is not None:
            return found, False
        found = agent_coloring(self.inst, agent, x).colors
        self._sets[key] = found
        return found, True

    def colors(self, agent: int, x: KnifeVector) -> tuple[int, ...]:
        """``lambda_i(x)``."""
        found, fresh = self._lookup(agent, x)
        if fresh and self.trace is not None:
            self.trace.emit({"vertex": list(x), "agent": agent, "colors": list(found)})
        return found

    def color(self, x: KnifeVector) -> int:
        """``lambda(x)``: the owner's color with the smallest-index tie-break."""
        found = self._colors.get(x)
        if found is None:
            owner = owner_label(x, len(x) + 1)
            options, _ = self._lookup(owner, x)
            found = min(options)
            self._colors[x] = found
            if self.trace is not None:
                self.trace.emit(
                    {"vertex": list(x), "owner": owner, "colors": list(options), "color": found}
                )
        return found


def check_properness(
    inst: Instance,
    bundles: int | None = None,
    coloring: Callable[[int, KnifeVector], Iterable[int]] | None = None,
) -> list[PropernessViolation]:
    """
    Sweep every vertex and agent; report each color naming a piece of zero
    length (coinciding knives).

    ``coloring`` replaces the agents' colorings, for testing the sweep itself.
    """
    n = bundles or inst.n
    m = inst.m
    if n < 2:
        return []
    total = vertex_count(m, n)
    limit = get_settings().sweep_max_vertices
    if total > limit:
        raise InputError(f"Properness sweep over {total} vertices exceeds the limit of {limit}")

    def default(agent: int, x: KnifeVector) -> Iterable[int]:
        return agent_coloring(inst, agent, x).colors

    choose = coloring or default
    violations = []
    for x in enumerate_vertices(m, n):
        for agent in inst.agents:
            for j in choose(agent, x):
                if not has_length(x, j, m):
                    violations.append(PropernessViolation(vertex=x, agent=agent, color=j))
    if violations:
        logger.warning(f"Properness sweep found {len(violations)} violations over {total} vertices")
    else:
        logger.debug(f"Properness sweep clean over {total} vertices")
    return violations
