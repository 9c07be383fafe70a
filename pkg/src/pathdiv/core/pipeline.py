"""
End-to-end solving: validate, search, round, certify.

A division only leaves ``solve`` after it has been certified for the
requested mode.
"""

import time
from collections.abc import Sequence

import psutil

from pathdiv.config import Engine
from pathdiv.core.rounding import round_simplex, round_trivial
from pathdiv.core.solver import search
from pathdiv.core.verify import bundle_count, certify
from pathdiv.exceptions import CertificateError, InputError
from pathdiv.logging import TraceSink, get_logger
from pathdiv.models.division import Division
from pathdiv.models.instance import Instance
from pathdiv.models.interval import Interval
from pathdiv.models.outcome import SearchMode
from pathdiv.models.simplex import ElementarySimplex
from pathdiv.schemas import SolveReport, StatsDocument, VerifyReport, WitnessDocument

logger = get_logger("pipeline")


def ensure_valid(inst: Instance) -> None:
    """Raise ``InputError`` listing the first violations of an invalid instance."""
    report = inst.validate()
    if report.valid:
        return
    shown = "; ".join(
        f"agent {v.agent} {{{v.lo}..{v.hi}}}: {v.reason}" for v in report.violations[:5]
    )
    raise InputError(f"Invalid instance ({len(report.violations)} violations): {shown}")


def _stats(started: float, scanned: int) -> StatsDocument:
    rss = psutil.Process().memory_info().rss
    return StatsDocument(
        simplices_scanned=scanned,
        elapsed_ms=round((time.perf_counter() - started) * 1000, 3),
        rss_mb=round(rss / (1024 * 1024), 1),
    )


def _certified(
    inst: Instance,
    division: Division,
    mode: SearchMode,
    secretive_agent: int | None,
    witnesses: WitnessDocument | None = None,
) -> VerifyReport:
    report = certify(inst, division, mode, secretive_agent, witnesses)
    if not report.accepted:
        logger.error(f"Produced {mode.value} division {division} failed certification")
        raise CertificateError(f"Division {division} is not a {mode.value} EF1_outer division")
    return report


def _check_agent(inst: Instance, mode: SearchMode, secretive_agent: int | None) -> None:
    if mode is not SearchMode.SECRETIVE:
        return
    if secretive_agent is None:
        raise InputError("Secretive mode needs a secretive agent")
    if secretive_agent not in inst.agents:
        raise InputError(f"Secretive agent {secretive_agent} out of range 1..{inst.n}")


def solve(
    inst: Instance,
    mode: SearchMode = SearchMode.PLAIN,
    secretive_agent: int | None = None,
    engine: Engine | None = None,
    threads: int | None = None,
    trace_simplices: TraceSink | None = None,
    trace_colors: TraceSink | None = None,
) -> SolveReport:
    """Find and certify a division for ``mode``."""
    ensure_valid(inst)
    _check_agent(inst, mode, secretive_agent)
    bundles = bundle_count(inst, mode)
    started = time.perf_counter()

    simplex = None
    index = None
    scanned = 0
    used_engine = "exhaustive"
    if bundles == 1:
        division = Division((Interval(1, inst.m),), inst.m)
        witnesses = None
    elif inst.m < bundles:
        logger.info(f"m={inst.m} < {bundles} bundles; using the trivial division")
        division = round_trivial(bundles, inst.m)
        witnesses = None
    else:
        outcome = search(
            inst,
            mode,
            secretive_agent=secretive_agent,
            engine=engine,
            threads=threads,
            trace_simplices=trace_simplices,
            trace_colors=trace_colors,
        )
        simplex = outcome.simplex
        index = outcome.index
        scanned = outcome.scanned
        if outcome.index is None:
            used_engine = "pathfollow"
        division = round_simplex(simplex)
        witnesses = outcome.to_witness_document()

    report = _certified(inst, division, mode, secretive_agent, witnesses)
    logger.info(f"Solved {mode.value}: {division}")
    return SolveReport(
        mode=mode.value,
        secretive_agent=secretive_agent if mode is SearchMode.SECRETIVE else None,
        engine=used_engine,
        agents=inst.n,
        bundles=bundles,
        m=inst.m,
        trivial=simplex is None,
        division=division.to_document(),
        witnesses=report.witnesses,
        simplex=simplex.to_document() if simplex is not None else None,
        simplex_index=index,
        stats=_stats(started, scanned),
    )


def solve_forced(
    inst: Instance,
    vertices: Sequence[Sequence[int]],
    mode: SearchMode = SearchMode.PLAIN,
    secretive_agent: int | None = None,
) -> SolveReport:
    """
    Round a given simplex instead of searching for one.

    The division is still certified, with witnesses found by matching since
    the simplex need not satisfy the search condition.
    """
    ensure_valid(inst)
    _check_agent(inst, mode, secretive_agent)
    bundles = bundle_count(inst, mode)
    started = time.perf_counter()
    simplex = ElementarySimplex.from_vertices(inst.m, vertices)
    if simplex.n != bundles:
        raise InputError(f"Forced simplex has {simplex.n} bundles, {mode.value} mode needs {bundles}")
    division = round_simplex(simplex)
    report = _certified(inst, division, mode, secretive_agent)
    logger.info(f"Rounded forced simplex {simplex} into {division}")
    return SolveReport(
        mode=mode.value,
        secretive_agent=secretive_agent if mode is SearchMode.SECRETIVE else None,
        engine="forced",
        agents=inst.n,
        bundles=bundles,
        m=inst.m,
        trivial=False,
        division=division.to_document(),
        witnesses=report.witnesses,
        simplex=simplex.to_document(),
        stats=_stats(started, 0),
    )
