"""
Geometry of the half-step knife simplex.

Partial divisions and boundary items of knife vectors, the Kuhn
triangulation into balanced elementary simplices, owner labels, and the
decomposition of a simplex into fixed items and contested boundary items.
All arithmetic is on doubled coordinates, so half-steps are integer +1.
"""

import math
from collections.abc import Iterator, Sequence
from itertools import combinations_with_replacement

from pathdiv.exceptions import InputError
from pathdiv.models.interval import Interval
from pathdiv.models.simplex import (
    ElementarySimplex,
    KnifeVector,
    PartialDivision,
    SimplexDecomposition,
    is_valid_vertex,
)


def _knife(x: Sequence[int], j: int, m: int) -> int:
    """Doubled position of knife ``j`` with sentinels ``x^0 = 1/2`` and ``x^n = m + 1/2``."""
    if j == 0:
        return 1
    if j == len(x) + 1:
        return 2 * m + 1
    return x[j - 1]


def bundle_at(x: Sequence[int], j: int, m: int) -> Interval:
    """``I_j(x)``: items strictly between knives ``j - 1`` and ``j``."""
    return Interval(_knife(x, j - 1, m) // 2 + 1, (_knife(x, j, m) - 1) // 2)


def has_length(x: Sequence[int], j: int, m: int) -> bool:
    """True unless knives ``j - 1`` and ``j`` coincide, i.e. piece ``j`` has zero length."""
    return _knife(x, j - 1, m) < _knife(x, j, m)


def partial_division(x: Sequence[int], m: int, n: int | None = None) -> PartialDivision:
    """The ``n`` bundles of fully visible items at knife vector ``x``."""
    if n is not None and len(x) != n - 1:
        raise InputError(f"Knife vector {list(x)} does not have {n - 1} knives")
    if not is_valid_vertex(x, m):
        raise InputError(f"Knife vector {list(x)} is not in the knife simplex for m={m}")
    bundles = tuple(bundle_at(x, j, m) for j in range(1, len(x) + 2))
    return PartialDivision(knives=tuple(x), m=m, bundles=bundles)


def boundary_items(x: Sequence[int], j: int, m: int) -> tuple[int, int]:
    """``(l_j, r_j)``: floor(x^{j-1} + 1/2) and ceil(x^j - 1/2)."""
    if not 1 <= j <= len(x) + 1:
        raise InputError(f"Bundle index {j} out of range 1..{len(x) + 1}")
    return (_knife(x, j - 1, m) + 1) // 2, _knife(x, j, m) // 2


def owner_label(x: Sequence[int], n: int) -> int:
    """
    Owner agent of a vertex: doubled coordinate sum mod ``n``, residue ``r`` is agent ``r + 1``.

    The sum rises by one per chain step, so an elementary simplex sees every agent once.
    """
    return sum(x) % n + 1


def vertex_count(m: int, n: int) -> int:
    """Number of vertices of the triangulation: C(2m + n - 1, n - 1)."""
    return math.comb(2 * m + n - 1, n - 1)


def simplex_count(m: int, n: int) -> int:
    """Number of elementary simplices: the region has doubled volume (2m)^(n-1) / (n-1)!."""
    return (2 * m) ** (n - 1)


def enumerate_vertices(m: int, n: int) -> Iterator[KnifeVector]:
    """All vertices in lexicographic order."""
    return combinations_with_replacement(range(1, 2 * m + 2), n - 1)


def _step_orders(base: KnifeVector, m: int) -> Iterator[tuple[int, ...]]:
    top = 2 * m + 1
    dims = len(base)
    current = list(base)
    order: list[int] = []
    used = [False] * dims

    def extend() -> Iterator[tuple[int, ...]]:
        if len(order) == dims:
            yield tuple(order)
            return
        for k in range(dims):
            if used[k]:
                continue
            raised = current[k] + 1
            if raised > top or (k + 1 < dims and raised > current[k + 1]):
                continue
            used[k] = True
            current[k] = raised
            order.append(k + 1)
            yield from extend()
            order.pop()
            current[k] -= 1
            used[k] = False

    yield from extend()


def enumerate_simplices(m: int, n: int) -> Iterator[ElementarySimplex]:
    """
    Every elementary simplex exactly once.

    Canonical order: lexicographic by base vertex, then by the sequence in
    which knives take their half-step. A chain is kept only if every
    intermediate vertex stays in the knife simplex.
    """
    if m < 1 or n < 2:
        raise InputError(f"Triangulation needs m >= 1 and n >= 2, got m={m}, n={n}")
    yield from _chains(m, n - 1)


def _chains(m: int, dims: int) -> Iterator[ElementarySimplex]:
    for base in combinations_with_replacement(range(1, 2 * m + 2), dims):
        for steps in _step_orders(base, m):
            yield ElementarySimplex(m=m, base=base, steps=steps)


def boundary_facets(m: int, n: int) -> Iterator[ElementarySimplex]:
    """
    Simplices having a facet on the face where the last bundle is empty.

    The facet is everything but vertex 0: the last knife sits at ``m + 1/2``
    on it and steps there first from ``m``.
    """
    top = 2 * m + 1
    for facet in _chains(m, n - 2):
        yield ElementarySimplex(m=m, base=(*facet.base, top - 1), steps=(n - 1, *facet.steps))


def pivot(simplex: ElementarySimplex, k: int) -> ElementarySimplex | None:
    """
    The neighbor sharing every vertex except vertex ``k`` (chain position).

    Standard Kuhn pivot rules; ``None`` when the neighbor leaves the knife
    simplex, i.e. the facet lies on its boundary.
    """
    base, steps = list(simplex.base), simplex.steps
    last = len(steps)
    if not 0 <= k <= last:
        raise InputError(f"Vertex position {k} out of range 0..{last}")
    if 0 < k < last:
        order = list(steps)
        order[k - 1], order[k] = order[k], order[k - 1]
        new_steps = tuple(order)
    elif k == 0:
        base[steps[0] - 1] += 1
        new_steps = (*steps[1:], steps[0])
    else:
        base[steps[-1] - 1] -= 1
        new_steps = (steps[-1], *steps[:-1])
    try:
        return ElementarySimplex(m=simplex.m, base=tuple(base), steps=new_steps)
    except InputError:
        return None


def decompose(simplex: ElementarySimplex) -> SimplexDecomposition:
    """
    ``B_j`` (items visible in bundle ``j`` at every vertex) and ``y^j``.

    Knife ``j`` takes two adjacent half-step positions over the chain;
    exactly one of them is an item, and that item is ``y^j``.
    """
    m, n = simplex.m, simplex.n
    fixed = []
    for j in range(1, n + 1):
        common = bundle_at(simplex.vertices[0], j, m)
        for vertex in simplex.vertices[1:]:
            common = common.intersect(bundle_at(vertex, j, m))
        fixed.append(common)
    boundary = []
    for j in range(1, n):
        low = simplex.base[j - 1]
        position = low if low % 2 == 0 else low + 1
        boundary.append(position // 2)
    for left, right in zip(boundary, boundary[1:], strict=False):
        if left > right:
            raise InputError(f"Boundary items {boundary} of {simplex} are not ordered")
    if any(not 1 <= item <= m for item in boundary):
        raise InputError(f"Boundary items {boundary} of {simplex} are off the path")
    return SimplexDecomposition(fixed=tuple(fixed), boundary=tuple(boundary))
