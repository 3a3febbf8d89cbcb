"""Net parsing, characteristic matrix compilation, and trajectory
validation."""

import json
from fractions import Fraction

import pytest

from conftest import two_tank_mats, two_tank_net
from ptegkit import (
    NEG_INF,
    POS_INF,
    EmptyNet,
    IntervalInverted,
    MarkingNotBinary,
    SchemaError,
    TrajectoryWindow,
    compile_matrices,
    parse_pteg,
    parse_trajectory,
    validate_trajectory,
)


def test_parse_accepts_text_and_dict():
    doc = {
        "transitions": ["a", "b"],
        "places": [{"from": "a", "to": "b", "marking": 0, "lb": 1, "ub": "inf"}],
    }
    net1 = parse_pteg(doc)
    net2 = parse_pteg(json.dumps(doc))
    assert net1.transitions == net2.transitions == ("a", "b")
    assert len(net1.places) == 1


def test_parse_exact_rationals():
    doc = {
        "transitions": ["a"],
        "places": [{"from": "a", "to": "a", "marking": 1, "lb": 0.1, "ub": "1/3"}],
    }
    net = parse_pteg(json.dumps(doc))
    place = net.places[0]
    # decimal text must not pick up binary-float noise
    assert place.lower == Fraction(1, 10)
    assert place.upper == Fraction(1, 3)


@pytest.mark.parametrize("doc,exc", [
    ("{not json", SchemaError),
    ({"transitions": ["a"]}, SchemaError),
    ({"transitions": [], "places": []}, EmptyNet),
    ({"transitions": ["a", "a"], "places": []}, SchemaError),
    ({"transitions": ["a"],
      "places": [{"from": "a", "to": "zzz", "marking": 0, "lb": 0, "ub": 1}]},
     SchemaError),
    ({"transitions": ["a"],
      "places": [{"from": "a", "to": "a", "marking": 2, "lb": 0, "ub": 1}]},
     MarkingNotBinary),
    ({"transitions": ["a"],
      "places": [{"from": "a", "to": "a", "marking": 0, "lb": 5, "ub": 3}]},
     IntervalInverted),
    ({"transitions": ["a"],
      "places": [{"from": "a", "to": "a", "marking": 0, "lb": -1, "ub": 3}]},
     SchemaError),
    ({"transitions": ["a"],
      "places": [{"from": "a", "to": "a", "marking": 0, "lb": "inf", "ub": "inf"}]},
     SchemaError),
])
def test_parse_rejects_bad_documents(doc, exc):
    with pytest.raises(exc):
        parse_pteg(doc)


def test_compile_two_tank_matrices():
    mats = two_tank_mats(2, 1, 10)
    assert mats.a1.to_rows() == [[Fraction(2), NEG_INF], [NEG_INF, Fraction(1)]]
    assert mats.b1.to_rows() == [[Fraction(2), POS_INF], [POS_INF, Fraction(1)]]
    assert mats.a0.to_rows() == [[NEG_INF, NEG_INF], [Fraction(0), NEG_INF]]
    assert mats.b0.to_rows() == [[POS_INF, POS_INF], [Fraction(10), POS_INF]]


def test_parallel_places_conjoin():
    net = parse_pteg({
        "transitions": ["a", "b"],
        "places": [
            {"from": "a", "to": "b", "marking": 0, "lb": 2, "ub": 9},
            {"from": "a", "to": "b", "marking": 0, "lb": 5, "ub": "inf"},
        ],
    })
    mats = compile_matrices(net)
    assert mats.a0.row(1)[0] == Fraction(5)
    assert mats.b0.row(1)[0] == Fraction(9)


def _law_trajectory(big_k):
    # x(k) = [2k, 3 + k]
    return TrajectoryWindow(tuple(
        (Fraction(2 * k), Fraction(3 + k)) for k in range(big_k + 1)
    ))


def test_validate_trajectory_consistent_window():
    mats = two_tank_mats(2, 1, "inf")
    result = validate_trajectory(mats, _law_trajectory(3))
    assert result.consistent
    assert result.k is None and result.kind is None and result.row is None


def test_validate_trajectory_first_violation():
    mats = two_tank_mats(2, 1, "inf")
    result = validate_trajectory(mats, _law_trajectory(4))
    # x(4) = [8, 7] breaks the zero-marking lower bound x2 >= x1
    assert not result.consistent
    assert (result.k, result.kind, result.row) == (4, "A0", 1)


def test_validate_trajectory_upper_bound_and_order():
    mats = two_tank_mats(2, 1, 10)
    daters = ((Fraction(0), Fraction(11)),)
    result = validate_trajectory(mats, TrajectoryWindow(daters))
    assert (result.consistent, result.k, result.kind, result.row) == \
        (False, 0, "B0", 1)


def test_validate_trajectory_shift_kinds():
    mats = two_tank_mats(2, 1, "inf")
    # second step fires t1 too early for its period-2 self loop
    daters = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)))
    result = validate_trajectory(mats, TrajectoryWindow(daters))
    assert (result.k, result.kind, result.row) == (0, "A1", 0)
    # and too late for the matching upper bound
    daters = ((Fraction(0), Fraction(0)), (Fraction(3), Fraction(1)))
    result = validate_trajectory(mats, TrajectoryWindow(daters))
    assert (result.k, result.kind, result.row) == (0, "B1", 0)


def test_validate_trajectory_nondecreasing():
    net = parse_pteg({
        "transitions": ["a"],
        "places": [{"from": "a", "to": "a", "marking": 0, "lb": 0, "ub": "inf"}],
    })
    mats = compile_matrices(net)
    daters = ((Fraction(5),), (Fraction(4),))
    result = validate_trajectory(mats, TrajectoryWindow(daters))
    assert (result.k, result.kind, result.row) == (0, "NONDECREASING", 0)


def test_parse_trajectory_roundtrip():
    traj = parse_trajectory({"daters": [[0, "1/2"], [1, 2]]}, 2)
    assert traj.horizon == 1
    assert traj.daters[0] == (Fraction(0), Fraction(1, 2))
    with pytest.raises(SchemaError):
        parse_trajectory({"daters": [[0, "inf"]]}, 2)
    with pytest.raises(SchemaError):
        parse_trajectory({"daters": [[0, 1], [2]]}, 2)
