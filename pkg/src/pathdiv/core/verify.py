"""
Independent certification of divisions.

EF1_outer reduces to a matching problem: for agent ``i`` to be content with
bundle ``b`` it must value ``b`` at least ``t_i = max_j v_i^-(I_j)``, so a
division is EF1_outer exactly when agents can be perfectly matched to
bundles along those edges. The secretive and extra variants ask for a family
of such matchings. The oracle runs the checkers over every division.
"""

import math
from collections.abc import Callable, Iterable, Iterator, Mapping
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

from pathdiv.config import get_settings
from pathdiv.core.matching import max_bipartite_matching
from pathdiv.core.parallel import all_hits
from pathdiv.exceptions import InputError, TheoremViolation
from pathdiv.logging import get_logger
from pathdiv.models.division import Division
from pathdiv.models.instance import Instance
from pathdiv.models.interval import Interval
from pathdiv.models.outcome import SearchMode
from pathdiv.schemas import Assignment, OracleReport, VerifyReport, WitnessDocument

logger = get_logger("verify")


def bundle_count(inst: Instance, mode: SearchMode) -> int:
    """Number of bundles a division for ``mode`` has: one fewer than agents in extra mode."""
    if mode is SearchMode.EXTRA:
        if inst.n < 2:
            raise InputError("Extra mode needs at least two agents")
        return inst.n - 1
    return inst.n


def _check_division(inst: Instance, division: Division, bundles: int) -> None:
    if division.m != inst.m:
        raise InputError(f"Division covers {division.m} items, instance has {inst.m}")
    if division.n != bundles:
        raise InputError(f"Expected a division into {bundles} bundles, got {division.n}")


def thresholds(
    inst: Instance, division: Division, agents: Iterable[int] | None = None
) -> dict[int, Fraction]:
    """``t_i = max_j v_i^-(I_j)`` for each listed agent (all agents by default)."""
    chosen = inst.agents if agents is None else agents
    return {
        agent: max(inst.up_to_one_value(agent, bundle) for bundle in division.bundles)
        for agent in chosen
    }


def _content(inst: Instance, division: Division, limits: Mapping[int, Fraction], agent: int, j: int) -> bool:
    return inst.value(agent, division.bundle(j)) >= limits[agent]


def _match(
    inst: Instance,
    division: Division,
    limits: Mapping[int, Fraction],
    agents: Iterable[int],
    bundles: Iterable[int],
) -> Assignment | None:
    """Perfect matching of ``agents`` onto ``bundles`` along contented edges, or None."""
    agents = list(agents)
    bundles = list(bundles)
    if len(agents) != len(bundles):
        return None
    graph = {
        agent: [j for j in bundles if _content(inst, division, limits, agent, j)]
        for agent in agents
    }
    if any(not options for options in graph.values()):
        return None
    matching = max_bipartite_matching(graph)
    if len(matching) < len(agents):
        return None
    return dict(sorted(matching.items()))


def _is_bijection(assignment: Mapping[int, int], domain: set[int], codomain: set[int]) -> bool:
    return (
        set(assignment) == domain
        and set(assignment.values()) == codomain
        and len(domain) == len(codomain)
    )


def is_ef1_outer(inst: Instance, division: Division, permutation: Mapping[int, int]) -> bool:
    """True when every agent ``i`` satisfies ``v_i(I_pi(i)) >= v_i^-(I_pi(j))`` for all ``j``."""
    _check_division(inst, division, inst.n)
    everyone = set(range(1, inst.n + 1))
    if not _is_bijection(permutation, everyone, everyone):
        raise InputError(f"{dict(permutation)} is not a permutation of 1..{inst.n}")
    for agent in inst.agents:
        own = inst.value(agent, division.bundle(permutation[agent]))
        for other in inst.agents:
            if own < inst.up_to_one_value(agent, division.bundle(permutation[other])):
                return False
    return True


def find_ef1_outer_assignment(inst: Instance, division: Division) -> Assignment | None:
    """A witnessing permutation found by threshold matching, or None if none exists."""
    _check_division(inst, division, inst.n)
    limits = thresholds(inst, division)
    return _match(inst, division, limits, inst.agents, range(1, division.n + 1))


def find_ef1_outer_assignment_exhaustive(inst: Instance, division: Division) -> Assignment | None:
    """First permutation in lexicographic order passing ``is_ef1_outer``; ``n!`` work."""
    _check_division(inst, division, inst.n)
    for image in permutations(range(1, inst.n + 1)):
        candidate = dict(zip(inst.agents, image, strict=True))
        if is_ef1_outer(inst, division, candidate):
            return candidate
    return None


def secretive_witnesses(
    inst: Instance, division: Division, secretive_agent: int
) -> dict[int, Assignment] | None:
    """
    For each bundle ``j`` the secretive agent might take, an EF1_outer
    assignment of the others onto the remaining bundles.

    The secretive agent's valuation is never read.
    """
    _check_division(inst, division, inst.n)
    if secretive_agent not in inst.agents:
        raise InputError(f"Secretive agent {secretive_agent} out of range 1..{inst.n}")
    others = [agent for agent in inst.agents if agent != secretive_agent]
    limits = thresholds(inst, division, others)
    witnesses = {}
    for j in range(1, division.n + 1):
        rest = [b for b in range(1, division.n + 1) if b != j]
        matching = _match(inst, division, limits, others, rest)
        if matching is None:
            return None
        witnesses[j] = matching
    return witnesses


def is_secretive_division(inst: Instance, division: Division, secretive_agent: int) -> bool:
    return secretive_witnesses(inst, division, secretive_agent) is not None


def extra_witnesses(inst: Instance, division: Division) -> dict[int, Assignment] | None:
    """For each departing agent, an EF1_outer assignment of all bundles to the rest."""
    _check_division(inst, division, bundle_count(inst, SearchMode.EXTRA))
    limits = thresholds(inst, division)
    everything = range(1, division.n + 1)
    witnesses = {}
    for departing in inst.agents:
        rest = [agent for agent in inst.agents if agent != departing]
        matching = _match(inst, division, limits, rest, everything)
        if matching is None:
            return None
        witnesses[departing] = matching
    return witnesses


def is_extra_division(inst: Instance, division: Division) -> bool:
    return extra_witnesses(inst, division) is not None


def _check_family(
    inst: Instance,
    division: Division,
    limits: Mapping[int, Fraction],
    family: Mapping[int, Assignment],
    keys: set[int],
    domain: Callable[[int], set[int]],
    codomain: Callable[[int], set[int]],
) -> bool:
    if set(family) != keys:
        return False
    for key, assignment in family.items():
        if not _is_bijection(assignment, domain(key), codomain(key)):
            return False
        if not all(_content(inst, division, limits, i, j) for i, j in assignment.items()):
            return False
    return True


def check_secretive_witnesses(
    inst: Instance,
    division: Division,
    secretive_agent: int,
    witnesses: Mapping[int, Assignment],
) -> bool:
    """Validate a given secretive witness family edge by edge."""
    _check_division(inst, division, inst.n)
    others = set(inst.agents) - {secretive_agent}
    bundles = set(range(1, division.n + 1))
    return _check_family(
        inst,
        division,
        thresholds(inst, division, others),
        witnesses,
        bundles,
        lambda _: others,
        lambda j: bundles - {j},
    )


def check_extra_witnesses(
    inst: Instance, division: Division, witnesses: Mapping[int, Assignment]
) -> bool:
    """Validate a given extra witness family edge by edge."""
    _check_division(inst, division, bundle_count(inst, SearchMode.EXTRA))
    agents = set(inst.agents)
    bundles = set(range(1, division.n + 1))
    return _check_family(
        inst,
        division,
        thresholds(inst, division),
        witnesses,
        agents,
        lambda i: agents - {i},
        lambda _: bundles,
    )


def certify(
    inst: Instance,
    division: Division,
    mode: SearchMode,
    secretive_agent: int | None = None,
    witnesses: WitnessDocument | None = None,
) -> VerifyReport:
    """
    Check ``division`` for ``mode``.

    Given ``witnesses`` are checked as they are; without them the checker
    searches for its own.
    """
    if mode is SearchMode.SECRETIVE and secretive_agent not in inst.agents:
        raise InputError(f"Secretive mode needs a secretive agent in 1..{inst.n}")
    if mode is SearchMode.PLAIN:
        limits = thresholds(inst, division)
        if witnesses is not None and witnesses.permutation is not None:
            accepted = is_ef1_outer(inst, division, witnesses.permutation)
            found = witnesses if accepted else None
        else:
            permutation = find_ef1_outer_assignment(inst, division)
            accepted = permutation is not None
            found = WitnessDocument(permutation=permutation) if accepted else None
    elif mode is SearchMode.SECRETIVE:
        others = [agent for agent in inst.agents if agent != secretive_agent]
        limits = thresholds(inst, division, others)
        if witnesses is not None and witnesses.by_excluded_bundle is not None:
            accepted = check_secretive_witnesses(
                inst, division, secretive_agent, witnesses.by_excluded_bundle
            )
            found = witnesses if accepted else None
        else:
            family = secretive_witnesses(inst, division, secretive_agent)
            accepted = family is not None
            found = WitnessDocument(by_excluded_bundle=family) if accepted else None
    else:
        _check_division(inst, division, bundle_count(inst, mode))
        limits = thresholds(inst, division)
        if witnesses is not None and witnesses.by_departing_agent is not None:
            accepted = check_extra_witnesses(inst, division, witnesses.by_departing_agent)
            found = witnesses if accepted else None
        else:
            family = extra_witnesses(inst, division)
            accepted = family is not None
            found = WitnessDocument(by_departing_agent=family) if accepted else None

    logger.debug(f"{mode.value} certification of {division}: {'accepted' if accepted else 'rejected'}")
    return VerifyReport(
        mode=mode.value,
        secretive_agent=secretive_agent if mode is SearchMode.SECRETIVE else None,
        accepted=accepted,
        thresholds=limits,
        witnesses=found,
    )


def division_count(n: int, m: int) -> int:
    """``C(m + n - 1, n - 1)`` ordered divisions of ``m`` items into ``n`` possibly empty bundles."""
    return math.comb(m + n - 1, n - 1)


def enumerate_divisions(n: int, m: int) -> Iterator[Division]:
    """
    Every division in lexicographic order of its cut points.

    Cut ``c_j`` is the last item of bundle ``j`` (or of an earlier one when
    bundle ``j`` is empty), so cuts form a non-decreasing tuple in ``0..m``.
    """
    if n < 1 or m < 1:
        raise InputError(f"Need n >= 1 and m >= 1, got n={n}, m={m}")
    for cuts in combinations_with_replacement(range(m + 1), n - 1):
        edges = (0, *cuts, m)
        yield Division(
            tuple(Interval(edges[j] + 1, edges[j + 1]) for j in range(n)),
            m,
        )


def _checker(
    inst: Instance, mode: SearchMode, secretive_agent: int | None
) -> Callable[[Division], bool]:
    if mode is SearchMode.PLAIN:
        return lambda d: find_ef1_outer_assignment(inst, d) is not None
    if mode is SearchMode.SECRETIVE:
        if secretive_agent is None:
            raise InputError("Secretive mode needs a secretive agent")
        return lambda d: is_secretive_division(inst, d, secretive_agent)
    return lambda d: is_extra_division(inst, d)


def feasible_divisions(
    inst: Instance, mode: SearchMode, secretive_agent: int | None = None
) -> Iterator[Division]:
    """Divisions accepted for ``mode``, lazily and in canonical order."""
    check = _checker(inst, mode, secretive_agent)
    for division in enumerate_divisions(bundle_count(inst, mode), inst.m):
        if check(division):
            yield division


def oracle(
    inst: Instance,
    mode: SearchMode,
    secretive_agent: int | None = None,
    threads: int | None = None,
) -> OracleReport:
    """
    Count the feasible divisions for ``mode`` by brute force.

    An empty feasible set contradicts the existence theorems and is raised as
    a ``TheoremViolation``.
    """
    settings = get_settings()
    bundles = bundle_count(inst, mode)
    total = division_count(bundles, inst.m)
    if total > settings.oracle_max_divisions:
        raise InputError(
            f"Oracle would check {total} divisions, above the limit of {settings.oracle_max_divisions}"
        )
    check = _checker(inst, mode, secretive_agent)
    hits, checked = all_hits(
        enumerate_divisions(bundles, inst.m),
        lambda d: True if check(d) else None,
        threads=threads or settings.threads,
        chunk_size=settings.chunk_size,
    )
    if not hits:
        logger.critical(f"No {mode.value} division among {checked} candidates")
        raise TheoremViolation(
            f"No {mode.value} division exists among all {checked} candidates",
            diagnostic={
                "mode": mode.value,
                "secretive_agent": secretive_agent,
                "instance": inst.to_document().model_dump(mode="json"),
                "divisions_checked": checked,
            },
        )
    logger.info(f"Oracle found {len(hits)} {mode.value} divisions among {checked}")
    return OracleReport(
        mode=mode.value,
        secretive_agent=secretive_agent if mode is SearchMode.SECRETIVE else None,
        divisions_checked=checked,
        feasible_count=len(hits),
        first_witness=hits[0][1].to_document(),
    )
