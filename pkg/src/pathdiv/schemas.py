"""
Pydantic schemas for documents read and written by Pathdiv.

Rationals travel as integers or ``"p/q"`` strings and are held as
``fractions.Fraction`` once parsed.
"""

from fractions import Fraction
from typing import Annotated, Any, Literal

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    TypeAdapter,
    model_validator,
)


def parse_rational(value: Any) -> Fraction:
    """Parse an int, a Fraction, or a ``"p/q"``/``"p"`` string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            if not den.strip().lstrip("-").isdigit() or int(den) == 0:
                raise ValueError(f"invalid rational: {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise ValueError(f"expected int or 'p/q' string, got {type(value).__name__}")


def format_rational(value: Fraction) -> int | str:
    """Integral values become ints, the rest ``"p/q"``."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational),
]


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)


# Instance documents
class AdditiveValuationsDocument(Document):
    type: Literal["additive"]
    values: list[list[Rational]]


class TableEntryDocument(Document):
    agent: int
    lo: int
    hi: int
    value: Rational


class TableValuationsDocument(Document):
    type: Literal["table"]
    entries: list[TableEntryDocument]


class InstanceDocument(Document):
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    valuations: AdditiveValuationsDocument | TableValuationsDocument = Field(
        discriminator="type"
    )

    @model_validator(mode="after")
    def check_shape(self) -> "InstanceDocument":
        if isinstance(self.valuations, AdditiveValuationsDocument):
            rows = self.valuations.values
            if len(rows) != self.n or any(len(row) != self.m for row in rows):
                raise ValueError(f"additive values must be an {self.n} x {self.m} table")
        return self


# Division documents
class IntervalDocument(Document):
    lo: int = Field(ge=1)
    hi: int

    @model_validator(mode="after")
    def check_order(self) -> "IntervalDocument":
        if self.lo > self.hi:
            raise ValueError("lo must not exceed hi; use null for an empty bundle")
        return self


DivisionDocument = list[IntervalDocument | None]
division_adapter: TypeAdapter[DivisionDocument] = TypeAdapter(DivisionDocument)

Assignment = dict[int, int]


# Reports
class Violation(Document):
    agent: int
    lo: int | None = None
    hi: int | None = None
    reason: str


class ValidationReport(Document):
    valid: bool
    violations: list[Violation] = Field(default_factory=list)


class WitnessDocument(Document):
    permutation: Assignment | None = None
    by_excluded_bundle: dict[int, Assignment] | None = None
    by_departing_agent: dict[int, Assignment] | None = None


class StatsDocument(Document):
    """Run statistics; elapsed time and resident memory vary between runs."""

    simplices_scanned: int = 0
    elapsed_ms: float = 0.0
    rss_mb: float = 0.0


class SolveReport(Document):
    mode: Literal["plain", "secretive", "extra"]
    secretive_agent: int | None = None
    engine: str
    agents: int
    bundles: int
    m: int
    trivial: bool
    division: DivisionDocument
    witnesses: WitnessDocument
    simplex: list[list[int]] | None = None
    simplex_index: int | None = None
    stats: StatsDocument = Field(default_factory=StatsDocument)


class VerifyReport(Document):
    mode: Literal["plain", "secretive", "extra"]
    secretive_agent: int | None = None
    accepted: bool
    thresholds: dict[int, Rational]
    witnesses: WitnessDocument | None = None


class OracleReport(Document):
    mode: Literal["plain", "secretive", "extra"]
    secretive_agent: int | None = None
    divisions_checked: int
    feasible_count: int
    first_witness: DivisionDocument | None = None
