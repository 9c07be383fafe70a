"""
Instance model: agents, path items, and exact valuations over connected bundles.
"""

import enum
from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import cached_property
from itertools import accumulate

from pathdiv.exceptions import InputError
from pathdiv.models.interval import Interval
from pathdiv.schemas import (
    AdditiveValuationsDocument,
    InstanceDocument,
    TableEntryDocument,
    TableValuationsDocument,
    ValidationReport,
    Violation,
)

ZERO = Fraction(0)


class ValuationKind(str, enum.Enum):
    """How agent valuations are specified."""

    ADDITIVE = "additive"
    TABLE = "table"


class Valuation(ABC):
    """Valuations of every agent over the non-empty connected bundles."""

    kind: ValuationKind

    @abstractmethod
    def value(self, agent: int, interval: Interval) -> Fraction:
        """Value of a non-empty, in-range interval; callers handle the empty bundle."""

    @abstractmethod
    def violations(self, n: int, m: int) -> list[Violation]:
        """Every monotonicity or sign violation."""

    @abstractmethod
    def to_document(self) -> AdditiveValuationsDocument | TableValuationsDocument:
        """Serializable form."""


class AdditiveValuation(Valuation):
    """Per-item values summed over a bundle."""

    kind = ValuationKind.ADDITIVE

    def __init__(self, values: Sequence[Sequence[Fraction | int]]):
        self.values: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(v) for v in row) for row in values
        )
        self._prefix = tuple(tuple(accumulate(row, initial=ZERO)) for row in self.values)

    def value(self, agent: int, interval: Interval) -> Fraction:
        prefix = self._prefix[agent - 1]
        return prefix[interval.hi] - prefix[interval.lo - 1]

    def violations(self, n: int, m: int) -> list[Violation]:
        return [
            Violation(agent=agent, lo=item, hi=item, reason=f"negative item value {value}")
            for agent, row in enumerate(self.values, start=1)
            for item, value in enumerate(row, start=1)
            if value < 0
        ]

    def to_document(self) -> AdditiveValuationsDocument:
        return AdditiveValuationsDocument(type="additive", values=[list(r) for r in self.values])


class TableValuation(Valuation):
    """An explicit value for every (agent, non-empty interval)."""

    kind = ValuationKind.TABLE

    def __init__(self, entries: Mapping[tuple[int, int, int], Fraction | int]):
        self.entries: dict[tuple[int, int, int], Fraction] = {
            key: Fraction(v) for key, v in entries.items()
        }

    def value(self, agent: int, interval: Interval) -> Fraction:
        return self.entries[(agent, interval.lo, interval.hi)]

    def violations(self, n: int, m: int) -> list[Violation]:
        found: list[Violation] = []
        for agent in range(1, n + 1):
            for lo in range(1, m + 1):
                single = self.entries[(agent, lo, lo)]
                if single < 0:
                    found.append(
                        Violation(agent=agent, lo=lo, hi=lo, reason="value below v(empty)=0")
                    )
                for hi in range(lo, m + 1):
                    current = self.entries[(agent, lo, hi)]
                    if lo > 1 and self.entries[(agent, lo - 1, hi)] < current:
                        found.append(
                            Violation(
                                agent=agent,
                                lo=lo - 1,
                                hi=hi,
                                reason=f"extending {{{lo}..{hi}}} leftward lowers the value",
                            )
                        )
                    if hi < m and self.entries[(agent, lo, hi + 1)] < current:
                        found.append(
                            Violation(
                                agent=agent,
                                lo=lo,
                                hi=hi + 1,
                                reason=f"extending {{{lo}..{hi}}} rightward lowers the value",
                            )
                        )
        return found

    def to_document(self) -> TableValuationsDocument:
        return TableValuationsDocument(
            type="table",
            entries=[
                TableEntryDocument(agent=a, lo=lo, hi=hi, value=v)
                for (a, lo, hi), v in sorted(self.entries.items())
            ],
        )


class Instance:
    """
    A path of ``m`` items shared by ``n`` agents.

    Instances are immutable after construction. Agents and items are 1-based.
    """

    def __init__(self, n: int, m: int, valuation: Valuation):
        if n < 1 or m < 1:
            raise InputError(f"Need n >= 1 and m >= 1, got n={n}, m={m}")
        self._n = n
        self._m = m
        self._valuation = valuation
        self._check_shape()

    @classmethod
    def additive(cls, values: Sequence[Sequence[Fraction | int]]) -> "Instance":
        """Build an additive instance from an ``n x m`` table of item values."""
        if not values or not values[0]:
            raise InputError("Additive values need at least one agent and one item")
        return cls(len(values), len(values[0]), AdditiveValuation(values))

    @classmethod
    def from_document(cls, doc: InstanceDocument) -> "Instance":
        spec = doc.valuations
        if isinstance(spec, AdditiveValuationsDocument):
            return cls(doc.n, doc.m, AdditiveValuation(spec.values))
        entries: dict[tuple[int, int, int], Fraction] = {}
        for entry in spec.entries:
            key = (entry.agent, entry.lo, entry.hi)
            if key in entries:
                raise InputError(f"Duplicate table entry for agent {entry.agent} {{{entry.lo}..{entry.hi}}}")
            entries[key] = entry.value
        return cls(doc.n, doc.m, TableValuation(entries))

    def to_document(self) -> InstanceDocument:
        return InstanceDocument(n=self.n, m=self.m, valuations=self._valuation.to_document())

    def _check_shape(self) -> None:
        valuation = self._valuation
        if isinstance(valuation, AdditiveValuation):
            rows = valuation.values
            if len(rows) != self._n or any(len(row) != self._m for row in rows):
                raise InputError(f"Additive values must be an {self._n} x {self._m} table")
        elif isinstance(valuation, TableValuation):
            expected = {
                (agent, lo, hi)
                for agent in range(1, self._n + 1)
                for lo in range(1, self._m + 1)
                for hi in range(lo, self._m + 1)
            }
            keys = set(valuation.entries)
            if keys - expected:
                bad = sorted(keys - expected)[0]
                raise InputError(f"Table entry out of range: agent {bad[0]} {{{bad[1]}..{bad[2]}}}")
            if expected - keys:
                missing = sorted(expected - keys)[0]
                raise InputError(
                    f"Table is missing agent {missing[0]} {{{missing[1]}..{missing[2]}}}"
                    f" ({len(expected - keys)} entries missing)"
                )

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def valuation(self) -> Valuation:
        return self._valuation

    @property
    def kind(self) -> ValuationKind:
        return self._valuation.kind

    @property
    def agents(self) -> range:
        return range(1, self._n + 1)

    def _check_query(self, agent: int, interval: Interval) -> None:
        if not 1 <= agent <= self._n:
            raise InputError(f"Agent {agent} out of range 1..{self._n}")
        if not interval.is_empty and not (1 <= interval.lo and interval.hi <= self._m):
            raise InputError(f"Interval {interval} out of range 1..{self._m}")

    def value(self, agent: int, interval: Interval) -> Fraction:
        """``v_i(I)``; the empty bundle is worth 0."""
        self._check_query(agent, interval)
        if interval.is_empty:
            return ZERO
        return self._valuation.value(agent, interval)

    def up_to_one_value(self, agent: int, interval: Interval) -> Fraction:
        """
        ``v_i^-(I)``: the least value left after removing one end item of ``I``.

        Only end items keep the bundle connected; singletons and the empty
        bundle are worth 0.
        """
        self._check_query(agent, interval)
        if len(interval) <= 1:
            return ZERO
        return min(
            self._valuation.value(agent, interval.without(interval.lo)),
            self._valuation.value(agent, interval.without(interval.hi)),
        )

    @cached_property
    def validation(self) -> ValidationReport:
        """Full validation report, computed once."""
        violations = self._valuation.violations(self._n, self._m)
        return ValidationReport(valid=not violations, violations=violations)

    def validate(self) -> ValidationReport:
        """Check sign and monotonicity of every agent's valuation."""
        return self.validation

    def with_agent_values(self, agent: int, values: Sequence[Fraction | int]) -> "Instance":
        """Copy of an additive instance with one agent's item values replaced."""
        valuation = self._valuation
        if not isinstance(valuation, AdditiveValuation):
            raise InputError("Only additive instances support replacing an agent's values")
        if not 1 <= agent <= self._n:
            raise InputError(f"Agent {agent} out of range 1..{self._n}")
        rows = list(valuation.values)
        rows[agent - 1] = tuple(Fraction(v) for v in values)
        return Instance(self._n, self._m, AdditiveValuation(rows))

    def __repr__(self) -> str:
        return f"<Instance(n={self._n}, m={self._m}, kind={self.kind.value})>"
