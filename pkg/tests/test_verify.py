"""
Tests for division certification and the brute-force oracle.
"""

import math

import pytest

from pathdiv.core import verify
from pathdiv.core.verify import (
    certify,
    check_extra_witnesses,
    check_secretive_witnesses,
    division_count,
    enumerate_divisions,
    extra_witnesses,
    feasible_divisions,
    find_ef1_outer_assignment,
    find_ef1_outer_assignment_exhaustive,
    is_ef1_outer,
    is_extra_division,
    is_secretive_division,
    oracle,
    secretive_witnesses,
    thresholds,
)
from pathdiv.exceptions import InputError, TheoremViolation
from pathdiv.models import EMPTY, Division, Instance, Interval, SearchMode
from pathdiv.schemas import WitnessDocument


def test_two_agents_one_item_each():
    inst = Instance.additive([[1, 1], [1, 1]])
    division = Division.from_items([[1], [2]], 2)
    assert is_ef1_outer(inst, division, {1: 1, 2: 2})
    assert is_ef1_outer(inst, division, {1: 2, 2: 1})
    assert find_ef1_outer_assignment(inst, division) == {1: 1, 2: 2}


def test_empty_bundle_against_a_pair():
    """v^-({1,2}) = 1 > 0 for identical agents, so nobody settles for the empty bundle."""
    inst = Instance.additive([[1, 1], [1, 1]])
    assert find_ef1_outer_assignment(inst, Division.from_items([[], [1, 2]], 2)) is None
    inst = Instance.additive([[1, 0], [0, 1]])
    assert find_ef1_outer_assignment(inst, Division.from_items([[], [1, 2]], 2)) == {1: 1, 2: 2}


def test_outer_items_only_can_be_removed():
    """Removing the middle item of {1,2,3} is not allowed, so v^- = 5 here."""
    inst = Instance.additive([[5, 0, 5, 0], [5, 0, 5, 0]])
    division = Division.from_items([[1, 2, 3], [4]], 4)
    assert thresholds(inst, division) == {1: 5, 2: 5}
    assert find_ef1_outer_assignment(inst, division) is None


def test_is_ef1_outer_needs_a_permutation():
    inst = Instance.additive([[1, 1], [1, 1]])
    division = Division.from_items([[1], [2]], 2)
    with pytest.raises(InputError):
        is_ef1_outer(inst, division, {1: 1, 2: 1})
    with pytest.raises(InputError):
        is_ef1_outer(inst, Division.from_items([[1], [2], []], 2), {1: 1, 2: 2})


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matching_agrees_with_trying_every_permutation(make_instance, n):
    for seed in range(12):
        inst = make_instance(seed=seed, n=n, m=5, max_value=4)
        for division in enumerate_divisions(n, 5):
            fast = find_ef1_outer_assignment(inst, division)
            slow = find_ef1_outer_assignment_exhaustive(inst, division)
            assert (fast is None) == (slow is None)
            if fast is not None:
                assert is_ef1_outer(inst, division, fast)


def test_plain_division_need_not_be_secretive():
    """Agent 1 takes the empty bundle whenever agent 2 is secretive."""
    inst = Instance.additive([[1, 1, 1], [0, 0, 0]])
    division = Division.from_items([[], [1, 2, 3]], 3)
    assert find_ef1_outer_assignment(inst, division) == {1: 2, 2: 1}
    assert not is_secretive_division(inst, division, secretive_agent=2)
    assert secretive_witnesses(inst, division, 2) is None


def test_secretive_witnesses_skip_the_secretive_valuation():
    inst = Instance.additive([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
    division = Division.from_items([[1], [2], [3]], 3)
    family = secretive_witnesses(inst, division, 3)
    assert family == {1: {1: 2, 2: 3}, 2: {1: 1, 2: 3}, 3: {1: 1, 2: 2}}
    changed = inst.with_agent_values(3, [0, 0, 9])
    assert secretive_witnesses(changed, division, 3) == family
    assert check_secretive_witnesses(inst, division, 3, family)


def test_bad_secretive_family_is_rejected():
    inst = Instance.additive([[1, 1, 1]] * 3)
    division = Division.from_items([[1], [2], [3]], 3)
    family = {1: {1: 2, 2: 3}, 2: {1: 1, 2: 3}, 3: {1: 1, 2: 1}}
    assert not check_secretive_witnesses(inst, division, 3, family)
    assert not check_secretive_witnesses(inst, division, 3, {1: {1: 2, 2: 3}})


def test_extra_division_all_ones():
    inst = Instance.additive([[1, 1, 1]] * 3)
    good = Division.from_items([[1], [2, 3]], 3)
    family = extra_witnesses(inst, good)
    assert family is not None and set(family) == {1, 2, 3}
    assert check_extra_witnesses(inst, good, family)
    assert not is_extra_division(inst, Division.from_items([[], [1, 2, 3]], 3))


def test_extra_needs_one_bundle_fewer():
    inst = Instance.additive([[1, 1, 1]] * 2)
    with pytest.raises(InputError):
        extra_witnesses(inst, Division.from_items([[1], [2, 3]], 3))
    assert find_ef1_outer_assignment(inst, Division.from_items([[], [1, 2, 3]], 3)) is None


def test_enumerate_divisions_order():
    divisions = list(enumerate_divisions(2, 2))
    assert [d.bundles for d in divisions] == [
        (EMPTY, Interval(1, 2)),
        (Interval.single(1), Interval.single(2)),
        (Interval(1, 2), EMPTY),
    ]


@pytest.mark.parametrize("n, m, expected", [(2, 2, 3), (3, 4, 15), (1, 5, 1), (4, 3, 20)])
def test_division_count(n, m, expected):
    assert division_count(n, m) == expected == math.comb(m + n - 1, n - 1)
    assert len({d.bundles for d in enumerate_divisions(n, m)}) == expected


def test_enumerate_divisions_rejects_bad_sizes():
    with pytest.raises(InputError):
        list(enumerate_divisions(0, 3))


def test_feasible_divisions_are_accepted(make_instance):
    inst = make_instance(seed=2, n=3, m=4)
    feasible = list(feasible_divisions(inst, SearchMode.PLAIN))
    assert feasible
    for division in feasible:
        assert certify(inst, division, SearchMode.PLAIN).accepted


@pytest.mark.parametrize(
    "mode, agent, n",
    [(SearchMode.PLAIN, None, 3), (SearchMode.SECRETIVE, 2, 3), (SearchMode.EXTRA, None, 4)],
)
def test_oracle_counts_feasible_divisions(make_instance, mode, agent, n):
    inst = make_instance(seed=1, n=n, m=4)
    report = oracle(inst, mode, secretive_agent=agent, threads=2)
    bundles = n - 1 if mode is SearchMode.EXTRA else n
    assert report.divisions_checked == division_count(bundles, 4)
    assert report.feasible_count == len(list(feasible_divisions(inst, mode, agent)))
    assert report.feasible_count >= 1
    assert report.first_witness == next(feasible_divisions(inst, mode, agent)).to_document()


def test_oracle_guard(fresh_settings):
    fresh_settings.oracle_max_divisions = 10
    with pytest.raises(InputError):
        oracle(Instance.additive([[1] * 4] * 3), SearchMode.PLAIN)


def test_oracle_empty_feasible_set_is_a_theorem_violation(monkeypatch):
    monkeypatch.setattr(verify, "find_ef1_outer_assignment", lambda inst, division: None)
    with pytest.raises(TheoremViolation) as excinfo:
        oracle(Instance.additive([[1, 1], [1, 1]]), SearchMode.PLAIN)
    assert excinfo.value.diagnostic["divisions_checked"] == 3


def test_certify_plain_report():
    inst = Instance.additive([[1, 1], [1, 1]])
    report = certify(inst, Division.from_items([[1], [2]], 2), SearchMode.PLAIN)
    assert report.accepted
    assert report.thresholds == {1: 0, 2: 0}
    assert report.witnesses.permutation == {1: 1, 2: 2}
    rejected = certify(inst, Division.from_items([[], [1, 2]], 2), SearchMode.PLAIN)
    assert not rejected.accepted
    assert rejected.witnesses is None


def test_certify_checks_given_witnesses():
    inst = Instance.additive([[1, 1, 0, 0], [0, 0, 1, 1]])
    division = Division.from_items([[1, 2], [3, 4]], 4)
    assert certify(inst, division, SearchMode.PLAIN, witnesses=WitnessDocument(permutation={1: 1, 2: 2})).accepted
    wrong = certify(inst, division, SearchMode.PLAIN, witnesses=WitnessDocument(permutation={1: 2, 2: 1}))
    assert not wrong.accepted


def test_certify_secretive_and_extra():
    inst = Instance.additive([[1, 1, 1]] * 3)
    report = certify(inst, Division.from_items([[1], [2], [3]], 3), SearchMode.SECRETIVE, 1)
    assert report.accepted and report.secretive_agent == 1
    assert set(report.thresholds) == {2, 3}
    with pytest.raises(InputError):
        certify(inst, Division.from_items([[1], [2], [3]], 3), SearchMode.SECRETIVE)
    extra = certify(inst, Division.from_items([[1], [2, 3]], 3), SearchMode.EXTRA)
    assert extra.accepted and set(extra.witnesses.by_departing_agent) == {1, 2, 3}
