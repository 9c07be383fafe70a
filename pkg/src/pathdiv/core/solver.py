"""
Search the triangulation for simplices that certify fair divisions.

Three acceptance conditions are supported:

- plain: the owners' chosen colors on the simplex's vertices are all distinct;
- secretive: with one agent left out, whichever bundle is removed the
  remaining agents can be perfectly matched to the remaining bundles in the
  simplex's color graph;
- extra: with ``n + 1`` agents and ``n`` bundles, whichever agent is removed
  the remaining agents can be perfectly matched to all bundles.

The existence theorems guarantee a hit, so exhausting the triangulation is
reported as a theorem violation rather than a normal outcome.
"""

from collections.abc import Callable
from typing import Any

from pathdiv.config import Engine, get_settings
from pathdiv.core.coloring import ColoringCache
from pathdiv.core.matching import max_bipartite_matching
from pathdiv.core.parallel import first_hit
from pathdiv.core.simplex import (
    boundary_facets,
    enumerate_simplices,
    owner_label,
    pivot,
    simplex_count,
)
from pathdiv.exceptions import InputError, TheoremViolation
from pathdiv.logging import TraceSink, get_logger
from pathdiv.models.instance import Instance
from pathdiv.models.outcome import BipartiteColorGraph, SearchMode, SearchOutcome
from pathdiv.models.simplex import ElementarySimplex
from pathdiv.schemas import Assignment

logger = get_logger("solver")


def color_graph(
    colorer: ColoringCache,
    simplex: ElementarySimplex,
    agents: tuple[int, ...],
) -> BipartiteColorGraph:
    """``G(S)`` restricted to the given agents' colorings."""
    edges = {
        (agent, color)
        for agent in agents
        for vertex in simplex.vertices
        for color in colorer.colors(agent, vertex)
    }
    return BipartiteColorGraph(
        left=agents,
        right=tuple(range(1, simplex.n + 1)),
        edges=frozenset(edges),
    )


def plain_condition(colorer: ColoringCache, simplex: ElementarySimplex) -> Assignment | None:
    """Owner-to-color permutation when the simplex is fully colored."""
    n = simplex.n
    permutation: Assignment = {}
    used: set[int] = set()
    for vertex in simplex.vertices:
        color = colorer.color(vertex)
        if color in used:
            return None
        used.add(color)
        permutation[owner_label(vertex, n)] = color
    return dict(sorted(permutation.items()))


def secretive_condition(
    graph: BipartiteColorGraph, secretive_agent: int
) -> dict[int, Assignment] | None:
    """For every bundle ``j``, a perfect matching of the other agents onto the other bundles."""
    others = [agent for agent in graph.left if agent != secretive_agent]
    witnesses: dict[int, Assignment] = {}
    for excluded in graph.right:
        adjacency = graph.adjacency(exclude_left=[secretive_agent], exclude_right=[excluded])
        if any(not adjacency[agent] for agent in others):
            return None
        matching = max_bipartite_matching(adjacency)
        if len(matching) < len(others):
            return None
        witnesses[excluded] = matching
    return witnesses


def extra_condition(graph: BipartiteColorGraph) -> dict[int, Assignment] | None:
    """For every departing agent, a matching of the others that covers every bundle."""
    witnesses: dict[int, Assignment] = {}
    for departing in graph.left:
        adjacency = graph.adjacency(exclude_left=[departing])
        covered = {color for colors in adjacency.values() for color in colors}
        if len(covered) < len(graph.right):
            return None
        matching = max_bipartite_matching(adjacency)
        if len(matching) < len(graph.right):
            return None
        witnesses[departing] = matching
    return witnesses


def _check_matching(
    graph: BipartiteColorGraph,
    matching: Assignment,
    agents: set[int],
    bundles: set[int],
) -> bool:
    return (
        set(matching) == agents
        and set(matching.values()) == bundles
        and all(graph.has_edge(agent, color) for agent, color in matching.items())
    )


def _self_check(
    outcome: SearchOutcome,
    colorer: ColoringCache,
    inst: Instance,
    secretive_agent: int | None = None,
) -> None:
    """Re-verify a witness edge by edge against the simplex it came from."""
    simplex = outcome.simplex
    n = simplex.n
    bundles = set(range(1, n + 1))
    ok = True
    if outcome.mode is SearchMode.PLAIN:
        permutation = outcome.permutation or {}
        ok = set(permutation) == bundles and set(permutation.values()) == bundles
        for vertex in simplex.vertices:
            owner = owner_label(vertex, n)
            ok = ok and permutation.get(owner) in colorer.colors(owner, vertex)
    elif outcome.mode is SearchMode.SECRETIVE:
        agents = set(inst.agents)
        others = agents - {secretive_agent}
        graph = color_graph(colorer, simplex, tuple(sorted(others)))
        ok = set(outcome.by_excluded_bundle) == bundles and all(
            _check_matching(graph, matching, others, bundles - {j})
            for j, matching in outcome.by_excluded_bundle.items()
        )
    else:
        agents = set(inst.agents)
        graph = color_graph(colorer, simplex, tuple(sorted(agents)))
        ok = set(outcome.by_departing_agent) == agents and all(
            _check_matching(graph, matching, agents - {i}, bundles)
            for i, matching in outcome.by_departing_agent.items()
        )
    if not ok:
        raise TheoremViolation(
            f"Witness self-check failed for {outcome.mode.value} simplex {simplex}",
            diagnostic={"simplex": simplex.to_document(), "mode": outcome.mode.value},
        )


def _exhausted(inst: Instance, mode: SearchMode, scanned: int, **context: Any) -> TheoremViolation:
    diagnostic = {
        "mode": mode.value,
        "instance": inst.to_document().model_dump(mode="json"),
        "simplices_scanned": scanned,
        **context,
    }
    logger.critical(f"No {mode.value} simplex found after scanning {scanned} simplices")
    return TheoremViolation(
        f"Triangulation exhausted without a {mode.value} simplex; "
        "this contradicts the existence theorem or reveals a bug",
        diagnostic=diagnostic,
    )


def _whole_path(inst: Instance, mode: SearchMode) -> SearchOutcome:
    """One bundle: the single-vertex simplex, every witness trivially satisfied."""
    simplex = ElementarySimplex(m=inst.m, base=(), steps=())
    if mode is SearchMode.PLAIN:
        return SearchOutcome(mode, simplex, index=None, scanned=0, permutation={1: 1})
    if mode is SearchMode.SECRETIVE:
        return SearchOutcome(mode, simplex, index=None, scanned=0, by_excluded_bundle={1: {}})
    witnesses = {i: {other: 1 for other in inst.agents if other != i} for i in inst.agents}
    return SearchOutcome(mode, simplex, index=None, scanned=0, by_departing_agent=witnesses)


def _require_dimension(inst: Instance, bundles: int) -> None:
    if bundles < 2:
        raise InputError(f"Simplex search needs at least 2 bundles, got {bundles}")
    if inst.m < bundles:
        raise InputError(f"Simplex search needs m >= n, got m={inst.m}, n={bundles}")


def _scan(
    inst: Instance,
    bundles: int,
    accept: Callable[[ElementarySimplex], Any],
    threads: int | None,
    trace: TraceSink | None,
) -> tuple[tuple[int, ElementarySimplex, Any] | None, int]:
    settings = get_settings()
    workers = threads or settings.threads
    on_item = None
    if trace is not None:
        if workers > 1:
            logger.warning("Tracing scans single-threaded to keep records in canonical order")
        workers = 1

        def on_item(index: int, simplex: ElementarySimplex, result: Any) -> None:
            trace.emit(
                {
                    "index": index,
                    "vertices": simplex.to_document(),
                    "accepted": result is not None,
                }
            )

    return first_hit(
        enumerate_simplices(inst.m, bundles),
        accept,
        threads=workers,
        chunk_size=settings.chunk_size,
        on_item=on_item,
    )


def find_plain(
    inst: Instance,
    engine: Engine | None = None,
    threads: int | None = None,
    colorer: ColoringCache | None = None,
    trace: TraceSink | None = None,
) -> SearchOutcome:
    """First fully-colored simplex (canonical order unless path-following)."""
    n = inst.n
    if n == 1:
        return _whole_path(inst, SearchMode.PLAIN)
    _require_dimension(inst, n)
    colorer = colorer or ColoringCache(inst)
    engine = engine or get_settings().engine

    if engine == "pathfollow":
        walked = _path_follow(colorer, inst.m, n)
        if walked is not None:
            simplex, steps = walked
            permutation = plain_condition(colorer, simplex)
            outcome = SearchOutcome(
                mode=SearchMode.PLAIN,
                simplex=simplex,
                index=None,
                scanned=steps,
                permutation=permutation,
            )
            _self_check(outcome, colorer, inst)
            logger.info(f"Path-following reached a fully-colored simplex in {steps} steps")
            return outcome
        logger.warning("Every door-in/door-out walk left the boundary; falling back to exhaustive scan")

    hit, scanned = _scan(inst, n, lambda s: plain_condition(colorer, s), threads, trace)
    if hit is None:
        raise _exhausted(inst, SearchMode.PLAIN, scanned)
    index, simplex, permutation = hit
    outcome = SearchOutcome(
        mode=SearchMode.PLAIN,
        simplex=simplex,
        index=index,
        scanned=scanned,
        permutation=permutation,
    )
    _self_check(outcome, colorer, inst)
    logger.info(f"Plain simplex found at canonical index {index}")
    return outcome


def find_secretive(
    inst: Instance,
    secretive_agent: int,
    threads: int | None = None,
    colorer: ColoringCache | None = None,
    trace: TraceSink | None = None,
) -> SearchOutcome:
    """First simplex whose color graph without the secretive agent passes every removal test."""
    n = inst.n
    if secretive_agent not in inst.agents:
        raise InputError(f"Secretive agent {secretive_agent} out of range 1..{n}")
    if n == 1:
        return _whole_path(inst, SearchMode.SECRETIVE)
    _require_dimension(inst, n)
    colorer = colorer or ColoringCache(inst)
    others = tuple(agent for agent in inst.agents if agent != secretive_agent)

    def accept(simplex: ElementarySimplex) -> dict[int, Assignment] | None:
        return secretive_condition(color_graph(colorer, simplex, others), secretive_agent)

    hit, scanned = _scan(inst, n, accept, threads, trace)
    if hit is None:
        raise _exhausted(inst, SearchMode.SECRETIVE, scanned, secretive_agent=secretive_agent)
    index, simplex, witnesses = hit
    outcome = SearchOutcome(
        mode=SearchMode.SECRETIVE,
        simplex=simplex,
        index=index,
        scanned=scanned,
        by_excluded_bundle=witnesses,
    )
    _self_check(outcome, colorer, inst, secretive_agent)
    logger.info(f"Secretive simplex for agent {secretive_agent} found at canonical index {index}")
    return outcome


def find_extra(
    inst: Instance,
    threads: int | None = None,
    colorer: ColoringCache | None = None,
    trace: TraceSink | None = None,
) -> SearchOutcome:
    """First simplex on ``inst.n - 1`` bundles that survives the departure of any agent."""
    bundles = inst.n - 1
    if bundles == 1:
        return _whole_path(inst, SearchMode.EXTRA)
    _require_dimension(inst, bundles)
    colorer = colorer or ColoringCache(inst)
    agents = tuple(inst.agents)

    def accept(simplex: ElementarySimplex) -> dict[int, Assignment] | None:
        return extra_condition(color_graph(colorer, simplex, agents))

    hit, scanned = _scan(inst, bundles, accept, threads, trace)
    if hit is None:
        raise _exhausted(inst, SearchMode.EXTRA, scanned)
    index, simplex, witnesses = hit
    outcome = SearchOutcome(
        mode=SearchMode.EXTRA,
        simplex=simplex,
        index=index,
        scanned=scanned,
        by_departing_agent=witnesses,
    )
    _self_check(outcome, colorer, inst)
    logger.info(f"Extra simplex found at canonical index {index}")
    return outcome


def _path_follow(
    colorer: ColoringCache, m: int, n: int
) -> tuple[ElementarySimplex, int] | None:
    """
    Door-in/door-out walk on the owner-chosen coloring.

    A door is a facet whose vertices carry colors ``1..n-1``. Walks start at
    each door on the face where the last bundle is empty and cross doors
    until a fully-colored simplex is reached or the walk leaves through
    another boundary door.
    """
    wanted = set(range(1, n))
    budget = simplex_count(m, n)
    steps = 0
    for start in boundary_facets(m, n):
        if {colorer.color(v) for v in start.vertices[1:]} != wanted:
            continue
        simplex, entered = start, 0
        for _ in range(budget):
            steps += 1
            colors = [colorer.color(v) for v in simplex.vertices]
            if len(set(colors)) == n:
                return simplex, steps
            new_color = colors[entered]
            twin = next(k for k, c in enumerate(colors) if c == new_color and k != entered)
            neighbor = pivot(simplex, twin)
            if neighbor is None:
                break
            kept = set(simplex.vertices)
            entered = next(k for k, v in enumerate(neighbor.vertices) if v not in kept)
            simplex = neighbor
    return None


def search(
    inst: Instance,
    mode: SearchMode,
    secretive_agent: int | None = None,
    engine: Engine | None = None,
    threads: int | None = None,
    trace_simplices: TraceSink | None = None,
    trace_colors: TraceSink | None = None,
) -> SearchOutcome:
    """Dispatch to the search for ``mode``."""
    colorer = ColoringCache(inst, trace=trace_colors)
    if trace_colors is not None:
        threads = 1
    if mode is SearchMode.PLAIN:
        return find_plain(inst, engine, threads, colorer, trace_simplices)
    if mode is SearchMode.SECRETIVE:
        if secretive_agent is None:
            raise InputError("Secretive mode needs a secretive agent")
        return find_secretive(inst, secretive_agent, threads, colorer, trace_simplices)
    return find_extra(inst, threads, colorer, trace_simplices)
