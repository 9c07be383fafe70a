"""
Benchmark sweeps over ``(n, m)`` grids.

``n`` counts bundles; extra-mode instances get one more agent. Row counts
and indices are deterministic, ``millis`` is wall time.
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from pathdiv.core.generator import generate_instance
from pathdiv.core.pipeline import solve
from pathdiv.core.simplex import simplex_count
from pathdiv.exceptions import InputError
from pathdiv.logging import get_logger
from pathdiv.models.outcome import SearchMode

logger = get_logger("bench")

BENCH_FIELDS = ("n", "m", "mode", "simplices", "accepted_index", "millis")


@dataclass(frozen=True, slots=True)
class BenchRow:
    n: int
    m: int
    mode: str
    simplices: int
    accepted_index: int
    millis: float

    def as_csv_row(self) -> list[object]:
        return [self.n, self.m, self.mode, self.simplices, self.accepted_index, f"{self.millis:.3f}"]


def bench(
    n_range: tuple[int, int],
    m_range: tuple[int, int],
    modes: Iterable[SearchMode] = (SearchMode.PLAIN,),
    seed: int = 0,
    max_value: int = 10,
    threads: int | None = None,
) -> Iterator[BenchRow]:
    """
    Solve one generated instance per grid point and mode.

    ``simplices`` is the size of the triangulation for ``(n, m)`` and
    ``accepted_index`` the canonical index of the accepted simplex, or ``-1``
    when no search ran (trivial division or path-following).
    """
    n_min, n_max = n_range
    m_min, m_max = m_range
    if n_min < 1 or m_min < 1 or n_min > n_max or m_min > m_max:
        raise InputError(f"Empty or invalid grid n={n_range} m={m_range}")
    modes = list(modes)
    for n in range(n_min, n_max + 1):
        for m in range(m_min, m_max + 1):
            for mode in modes:
                agents = n + 1 if mode is SearchMode.EXTRA else n
                inst = generate_instance(seed, agents, m, max_value)
                secretive_agent = agents if mode is SearchMode.SECRETIVE else None
                report = solve(inst, mode, secretive_agent=secretive_agent, threads=threads)
                row = BenchRow(
                    n=n,
                    m=m,
                    mode=mode.value,
                    simplices=simplex_count(m, n),
                    accepted_index=-1 if report.simplex_index is None else report.simplex_index,
                    millis=report.stats.elapsed_ms,
                )
                logger.debug(f"bench {row}")
                yield row
