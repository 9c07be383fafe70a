"""
Rounding an elementary simplex into a full connected division.

Every item fixed in a bundle over the whole chain stays there; the contested
boundary items are handed out left to right. The result is checked against
the sandwich ``v_i(I*_j) >= hat v_i(x_k, j) >= v_i^-(I*_j)`` by
``lemma1_check``.
"""

from dataclasses import dataclass
from fractions import Fraction

from pathdiv.core.coloring import virtual_value
from pathdiv.core.simplex import bundle_at, decompose
from pathdiv.exceptions import InputError
from pathdiv.logging import get_logger
from pathdiv.models.division import Division
from pathdiv.models.instance import Instance
from pathdiv.models.interval import EMPTY, Interval
from pathdiv.models.simplex import ElementarySimplex, KnifeVector, SimplexDecomposition

logger = get_logger("rounding")

CASE_FIRST = 1
CASE_LAST = 2
CASE_NO_BOUNDARY = 3
CASE_LEFT_ONLY = 4
CASE_RIGHT_ONLY = 5
CASE_BOTH = 6
CASE_SHARED_BOUNDARY = 7


@dataclass(frozen=True, slots=True)
class SandwichViolation:
    """One ``(agent, bundle, vertex)`` triple where the sandwich fails."""

    agent: int
    bundle: int
    vertex: KnifeVector
    value: Fraction
    virtual: Fraction
    up_to_one: Fraction
    case: int

    def __str__(self) -> str:
        return (
            f"agent {self.agent}, bundle {self.bundle}, vertex {list(self.vertex)} (case {self.case}): "
            f"v={self.value} hat_v={self.virtual} v^-={self.up_to_one}"
        )


def round_simplex(simplex: ElementarySimplex, skip_two_knife_clause: bool = False) -> Division:
    """
    Round ``simplex`` into a division of items ``1..m``.

    With ``skip_two_knife_clause`` an interior bundle whose left boundary
    item was already taken always receives its right one; that reading
    breaks the sandwich and exists only to show it.
    """
    m, n = simplex.m, simplex.n
    if n == 1:
        return Division((Interval(1, m),), m)

    parts = decompose(simplex)
    vertices = simplex.vertices
    bundles = list(parts.fixed)
    y = parts.boundary
    allocated: set[int] = set()

    def give(item: int, j: int) -> None:
        bundles[j - 1] = bundles[j - 1].extend(item)
        allocated.add(item)

    def appears(item: int, j: int) -> bool:
        return any(item in bundle_at(x, j, m) for x in vertices)

    if appears(y[0], 1):
        give(y[0], 1)

    for j in range(2, n):
        left, right = y[j - 2], y[j - 1]
        taken_left = left in allocated
        if not taken_left:
            give(left, j)
        if left == right:
            continue
        if skip_two_knife_clause:
            squeezed = False
        else:
            squeezed = any(
                x[j - 2] == 2 * left + 1 and x[j - 1] == 2 * right - 1 for x in vertices
            )
        if appears(right, j) or (taken_left and not squeezed):
            give(right, j)

    if y[-1] not in allocated:
        give(y[-1], n)

    return Division(tuple(bundles), m)


def round_trivial(n: int, m: int) -> Division:
    """Singletons ``{1}, ..., {m}`` followed by ``n - m`` empty bundles."""
    if m < 1:
        raise InputError(f"A path needs at least one item, got m={m}")
    if m >= n:
        raise InputError(f"The trivial division needs m < n, got m={m}, n={n}")
    return Division(tuple(Interval.single(i) for i in range(1, m + 1)) + (EMPTY,) * (n - m), m)


def lemma1_case(
    simplex: ElementarySimplex,
    parts: SimplexDecomposition,
    division: Division,
    j: int,
) -> int:
    """Which case of the sandwich argument covers bundle ``j``."""
    n = simplex.n
    if j == 1:
        return CASE_FIRST
    if j == n:
        return CASE_LAST
    left, right = parts.boundary[j - 2], parts.boundary[j - 1]
    if left == right:
        return CASE_SHARED_BOUNDARY
    bundle = division.bundle(j)
    got_left, got_right = left in bundle, right in bundle
    if got_left and got_right:
        return CASE_BOTH
    if got_left:
        return CASE_LEFT_ONLY
    if got_right:
        return CASE_RIGHT_ONLY
    return CASE_NO_BOUNDARY


def lemma1_check(
    inst: Instance,
    simplex: ElementarySimplex,
    division: Division | None = None,
) -> list[SandwichViolation]:
    """
    Check the sandwich for every agent, bundle and vertex of ``simplex``.

    ``division`` defaults to the rounding of ``simplex``. Agents are all of
    ``inst``'s agents, which may outnumber the bundles.
    """
    n = simplex.n
    if division is None:
        division = round_simplex(simplex)
    if division.n != n or division.m != simplex.m or inst.m != simplex.m:
        raise InputError(f"Division {division} does not belong to simplex {simplex}")
    parts = decompose(simplex)

    violations = []
    for j in range(1, n + 1):
        bundle = division.bundle(j)
        for agent in inst.agents:
            value = inst.value(agent, bundle)
            up_to_one = inst.up_to_one_value(agent, bundle)
            for x in simplex.vertices:
                virtual = virtual_value(inst, agent, x, j)
                if value >= virtual >= up_to_one:
                    continue
                violations.append(
                    SandwichViolation(
                        agent=agent,
                        bundle=j,
                        vertex=x,
                        value=value,
                        virtual=virtual,
                        up_to_one=up_to_one,
                        case=lemma1_case(simplex, parts, division, j),
                    )
                )
    if violations:
        logger.warning(
            f"Sandwich fails {len(violations)} times on {simplex}",
            details="\n".join(str(v) for v in violations),
        )
    return violations
