"""
Tests for the domain models: intervals, instances, divisions and simplices.
"""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from pathdiv.exceptions import InputError
from pathdiv.models import EMPTY, Division, ElementarySimplex, Instance, Interval, TableValuation
from pathdiv.schemas import InstanceDocument, format_rational, parse_rational


def table_instance(n, m, value):
    """Table-valued instance with ``value(agent, lo, hi)`` for every interval."""
    entries = {
        (agent, lo, hi): value(agent, lo, hi)
        for agent in range(1, n + 1)
        for lo in range(1, m + 1)
        for hi in range(lo, m + 1)
    }
    return Instance(n, m, TableValuation(entries))


# Intervals


def test_empty_intervals_are_normalized():
    """Every lo > hi pair is the same empty bundle."""
    assert Interval(5, 2) == EMPTY
    assert Interval(5, 2).is_empty
    assert len(EMPTY) == 0
    assert str(EMPTY) == "{}"
    assert list(EMPTY) == []


def test_interval_membership_and_str():
    interval = Interval(3, 5)
    assert 3 in interval and 5 in interval
    assert 2 not in interval and 6 not in interval
    assert len(interval) == 3
    assert str(interval) == "{3..5}"
    assert str(Interval.single(4)) == "{4}"


def test_interval_without_end_items():
    interval = Interval(3, 5)
    assert interval.without(3) == Interval(4, 5)
    assert interval.without(5) == Interval(3, 4)
    assert interval.without(9) == interval
    assert Interval.single(2).without(2).is_empty


def test_interval_without_inner_item_disconnects():
    with pytest.raises(ValueError):
        Interval(3, 5).without(4)


def test_interval_extend():
    assert EMPTY.extend(4) == Interval.single(4)
    assert Interval(3, 5).extend(6) == Interval(3, 6)
    assert Interval(3, 5).extend(2) == Interval(2, 5)
    assert Interval(3, 5).extend(4) == Interval(3, 5)
    with pytest.raises(ValueError):
        Interval(3, 5).extend(8)


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.integers(1, 20), st.integers(0, 20))
def test_removing_an_end_shrinks_by_one(lo, length):
    """Removing either end of a non-empty run leaves a run one shorter."""
    interval = Interval(lo, lo + length)
    for end in (interval.lo, interval.hi):
        smaller = interval.without(end)
        assert len(smaller) == len(interval) - 1
        assert end not in smaller


# Instances


def test_additive_values():
    inst = Instance.additive([[1, 2, 3], [0, 0, 5]])
    assert inst.n == 2 and inst.m == 3
    assert inst.value(1, Interval(1, 3)) == 6
    assert inst.value(2, Interval(2, 3)) == 5
    assert inst.value(1, EMPTY) == 0


def test_up_to_one_value_removes_the_cheaper_end():
    """v^-({1,2,3}) = min(v({2,3}), v({1,2}))."""
    inst = Instance.additive([[0, 0, 5]])
    assert inst.up_to_one_value(1, Interval(1, 3)) == 0
    assert inst.up_to_one_value(1, Interval(2, 3)) == 0
    assert inst.up_to_one_value(1, Interval.single(3)) == 0
    assert inst.up_to_one_value(1, EMPTY) == 0

    other = Instance.additive([[4, 1, 2]])
    assert other.up_to_one_value(1, Interval(1, 3)) == 3


def test_value_out_of_range():
    inst = Instance.additive([[1, 1]])
    with pytest.raises(InputError):
        inst.value(2, Interval(1, 1))
    with pytest.raises(InputError):
        inst.value(1, Interval(1, 3))


def test_additive_validation_flags_negative_items():
    inst = Instance.additive([[1, -1, 1]])
    report = inst.validate()
    assert not report.valid
    assert report.violations[0].lo == 2


def test_table_validation_flags_non_monotone_extension():
    """Extending {1} to {1,2} may not lower the value."""
    values = {(1, 1): 1, (2, 2): 1, (1, 2): 0}
    inst = table_instance(1, 2, lambda agent, lo, hi: values[(lo, hi)])
    report = inst.validate()
    assert not report.valid
    assert any(v.lo == 1 and v.hi == 2 for v in report.violations)


def test_table_monotone_instance_is_valid():
    inst = table_instance(2, 3, lambda agent, lo, hi: (hi - lo + 1) ** agent)
    assert inst.validate().valid
    assert inst.value(2, Interval(1, 3)) == 9
    assert inst.up_to_one_value(2, Interval(1, 3)) == 4


def test_table_with_missing_entry_is_rejected():
    entries = {(1, 1, 1): 1, (1, 2, 2): 1}
    with pytest.raises(InputError):
        Instance(1, 2, TableValuation(entries))


def test_instance_document_round_trip():
    inst = Instance.additive([[1, Fraction(1, 2)], [0, 3]])
    doc = inst.to_document()
    assert doc.model_dump(mode="json")["valuations"]["values"] == [[1, "1/2"], [0, 3]]
    again = Instance.from_document(InstanceDocument.model_validate(doc.model_dump(mode="json")))
    assert again.value(1, Interval(1, 2)) == Fraction(3, 2)


def test_instance_document_shape_is_checked():
    with pytest.raises(ValidationError):
        InstanceDocument.model_validate(
            {"n": 2, "m": 2, "valuations": {"type": "additive", "values": [[1, 1]]}}
        )
    with pytest.raises(ValidationError):
        InstanceDocument.model_validate(
            {"n": 1, "m": 1, "valuations": {"type": "other", "values": [[1]]}}
        )


def test_duplicate_table_entries_are_rejected():
    doc = InstanceDocument.model_validate(
        {
            "n": 1,
            "m": 1,
            "valuations": {
                "type": "table",
                "entries": [
                    {"agent": 1, "lo": 1, "hi": 1, "value": 1},
                    {"agent": 1, "lo": 1, "hi": 1, "value": 2},
                ],
            },
        }
    )
    with pytest.raises(InputError):
        Instance.from_document(doc)


def test_with_agent_values_replaces_one_row():
    inst = Instance.additive([[1, 1], [2, 2]])
    changed = inst.with_agent_values(2, [5, 0])
    assert changed.value(2, Interval(1, 2)) == 5
    assert changed.value(1, Interval(1, 2)) == 2
    assert inst.value(2, Interval(1, 2)) == 4


def test_rationals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("7") == 7
    assert parse_rational(2) == 2
    assert format_rational(Fraction(6, 3)) == 2
    assert format_rational(Fraction(1, 3)) == "1/3"
    for bad in ("1/0", True, 1.5, "x"):
        with pytest.raises(ValueError):
            parse_rational(bad)


# Divisions


def test_division_from_items():
    division = Division.from_items([[1, 2], [], [3]], 3)
    assert division.bundles == (Interval(1, 2), EMPTY, Interval.single(3))
    assert division.bundle(3) == Interval.single(3)
    assert str(division) == "({1..2}, {}, {3})"
    assert division.to_document()[1] is None


def test_division_must_partition_the_path():
    with pytest.raises(InputError):
        Division((Interval(1, 2), Interval(4, 4)), 4)
    with pytest.raises(InputError):
        Division((Interval(2, 3), Interval(1, 1)), 3)
    with pytest.raises(InputError):
        Division((Interval(1, 2),), 3)
    with pytest.raises(InputError):
        Division.from_items([[1, 3], [2]], 3)


# Simplices


def test_simplex_from_vertices_any_order():
    simplex = ElementarySimplex.from_vertices(2, [(2, 3), (1, 2), (2, 2)])
    assert simplex.base == (1, 2)
    assert simplex.steps == (1, 2)
    assert simplex.vertices == ((1, 2), (2, 2), (2, 3))


def test_simplex_rejects_broken_chains():
    with pytest.raises(InputError):
        ElementarySimplex.from_vertices(3, [(1, 1), (2, 2)])
    with pytest.raises(InputError):
        ElementarySimplex(m=1, base=(3,), steps=(1,))
    with pytest.raises(InputError):
        ElementarySimplex(m=3, base=(1, 1), steps=(1, 1))
