"""First-token-death search: exactness, monotonicity, and the bound
override."""

import random

import pytest

from conftest import positive_zero_shift_net, random_mats, two_tank_mats
from ptegkit import (
    IsWeaklyConsistent,
    build_block,
    build_periodic,
    compile_matrices,
    first_death,
    gamma_check,
    synthesize,
    validate_trajectory,
    verify_wc,
)


def test_two_tank_first_death():
    report = first_death(two_tank_mats(2, 1, 10))
    assert report.k_star == 11
    assert report.max_firings == 11
    sys = build_periodic(two_tank_mats(2, 1, 10))
    assert gamma_check(build_block(sys, 10).m).in_gamma
    assert not gamma_check(build_block(sys, 11).m).in_gamma
    wit = report.witness
    assert wit is not None and wit.weight > 0
    assert wit.nodes[0] == wit.nodes[-1]


def test_weakly_consistent_net_raises():
    with pytest.raises(IsWeaklyConsistent):
        first_death(two_tank_mats(2, 1, "inf"))


def test_zero_shift_conflict_dies_immediately():
    report = first_death(compile_matrices(positive_zero_shift_net()))
    assert report.k_star == 0


def test_bound_override():
    mats = two_tank_mats(2, 1, 10)
    below = first_death(mats, bound=5)
    assert below.k_star is None and below.max_firings is None
    above = first_death(mats, bound=50)
    assert above.k_star == 11
    # a weakly consistent net with an explicit bound reports no death
    free = first_death(two_tank_mats(2, 1, "inf"), bound=8)
    assert free.k_star is None


def test_feasibility_witness_at_last_good_horizon():
    mats = two_tank_mats(2, 1, 10)
    report = first_death(mats)
    traj = synthesize(mats, report.k_star - 1)
    assert validate_trajectory(mats, traj).consistent


def test_linear_scan_agreement_and_upward_closure():
    rng = random.Random(53)
    found = 0
    while found < 30:
        mats = random_mats(rng)
        if verify_wc(mats).weakly_consistent:
            continue
        found += 1
        report = first_death(mats)
        k_star = report.k_star
        sys = build_periodic(mats)
        for k in range(0, min(20, k_star + 3) + 1):
            feasible = gamma_check(build_block(sys, k).m).in_gamma
            assert feasible == (k < k_star)
