"""Finite schedule synthesis and its validation guarantees."""

import random
from fractions import Fraction

import pytest

from conftest import electroplating_net, random_mats, two_tank_mats
from ptegkit import (
    HorizonInfeasible,
    ShapeError,
    TropicalMatrix,
    build_block,
    build_periodic,
    compile_matrices,
    gamma_check,
    kleene_star,
    otimes,
    parse_pteg,
    synthesize,
    validate_trajectory,
    verify_wc,
)


def test_synthesize_consistent_window():
    mats = two_tank_mats(2, 1, "inf")
    traj = synthesize(mats, 3)
    assert traj.horizon == 3
    assert validate_trajectory(mats, traj).consistent


def test_synthesize_equals_star_product():
    mats = two_tank_mats(2, 1, "inf")
    k = 4
    u = [Fraction(i, 2) for i in range(mats.n * (k + 1))]
    traj = synthesize(mats, k, u)
    m = build_block(build_periodic(mats), k).m
    um = TropicalMatrix.from_rows([[v] for v in u])
    want = [row[0] for row in otimes(kleene_star(m), um).to_rows()]
    flat = [v for vec in traj.daters for v in vec]
    assert flat == want


def test_synthesize_echoes_seed_without_constraints():
    net = parse_pteg({
        "transitions": ["a", "b"],
        "places": [{"from": "a", "to": "b", "marking": 1, "lb": 1, "ub": "inf"}],
    })
    mats = compile_matrices(net)
    traj = synthesize(mats, 0, [5, 7])
    assert traj.daters == ((Fraction(5), Fraction(7)),)


def test_synthesize_monotone_in_seed():
    mats = two_tank_mats(2, 1, "inf")
    lo = synthesize(mats, 3, [0] * 8)
    hi = synthesize(mats, 3, [1] * 8)
    for a, b in zip(lo.daters, hi.daters):
        assert all(x <= y for x, y in zip(a, b))


def test_synthesize_rejects_bad_seed_and_horizon():
    mats = two_tank_mats(2, 1, "inf")
    with pytest.raises(ShapeError):
        synthesize(mats, 1, [0, 0])
    with pytest.raises(ValueError):
        synthesize(mats, 1, [0, "inf", 0, 0])
    with pytest.raises(ValueError):
        synthesize(mats, -1)


def test_infeasible_horizon_raises_with_witness():
    mats = two_tank_mats(2, 1, 10)
    with pytest.raises(HorizonInfeasible) as exc:
        synthesize(mats, 11)
    assert exc.value.witness is not None
    assert exc.value.witness.weight > 0


def test_long_horizon_on_unbounded_depot_line():
    mats = compile_matrices(electroplating_net(depot_capacity_one=False))
    rng = random.Random(59)
    u = [rng.randint(0, 50) for _ in range(mats.n * 201)]
    traj = synthesize(mats, 200, u)
    assert validate_trajectory(mats, traj).consistent


def test_random_weakly_consistent_nets_synthesize_cleanly():
    rng = random.Random(61)
    done = 0
    while done < 20:
        mats = random_mats(rng)
        if not verify_wc(mats).weakly_consistent:
            continue
        k = rng.randint(0, 30)
        assert gamma_check(build_block(build_periodic(mats), k).m).in_gamma
        u = [rng.randint(-5, 20) for _ in range(mats.n * (k + 1))]
        traj = synthesize(mats, k, u)
        assert validate_trajectory(mats, traj).consistent
        done += 1
