import json

import mpmath
import pytest
from hypothesis import given

from conftest import instances
from mmdc.instance import (
    InfeasibleReason,
    MatchResult,
    ProblemInstance,
    ValidationError,
    from_points,
    instance_from_json,
    necessary_feasibility,
    transpose,
    validate,
    violations,
)
from mmdc import flow


def make(cost, alpha, alpha_cap, beta, beta_cap):
    return ProblemInstance.create(cost, alpha, alpha_cap, beta, beta_cap)


def test_minimal_instance_is_valid(minimal):
    validate(minimal)


def test_demand_above_capacity():
    with pytest.raises(ValidationError) as err:
        validate(make([[5]], [2], [1], [1], [1]))
    assert (err.value.kind, err.value.side, err.value.index) == ("DemandExceedsCapacity", "A", 0)


def test_capacity_above_partner_count():
    inst = make([[0] * 3] * 2, [0, 0], [1, 1], [0, 0, 0], [3, 1, 2])
    with pytest.raises(ValidationError) as err:
        validate(inst)
    assert (err.value.kind, err.value.side, err.value.index) == ("CapacityExceedsPartnerCount", "B", 0)


@pytest.mark.parametrize("inst, kind", [
    (ProblemInstance(s=0, t=1, cost=(), alpha=(), alpha_cap=(), beta=(0,), beta_cap=(0,)), "BadDimensions"),
    (make([[1, 2]], [0], [1], [0], [1]), "BadDimensions"),
    (make([[1]], [-1], [1], [0], [1]), "NegativeDemand"),
    (make([[10**13]], [0], [1], [0], [1]), "CostOutOfRange"),
])
def test_other_violations(inst, kind):
    with pytest.raises(ValidationError) as err:
        validate(inst)
    assert err.value.kind == kind


def test_cost_error_names_cell():
    with pytest.raises(ValidationError) as err:
        validate(make([[0, 0], [0, -(10**12) - 1]], [0, 0], [1, 1], [0, 0], [1, 1]))
    assert err.value.index == (1, 1)


def test_necessary_feasibility():
    assert necessary_feasibility(make([[0, 0], [0, 0]], [1, 1], [2, 2], [0, 0], [1, 1])) is None
    assert (necessary_feasibility(make([[0, 0], [0, 0]], [2, 2], [2, 2], [0, 0], [1, 1]))
            is InfeasibleReason.A_DEMAND_EXCEEDS_B_CAPACITY)
    assert (necessary_feasibility(make([[0, 0], [0, 0]], [0, 0], [1, 0], [1, 1], [2, 2]))
            is InfeasibleReason.B_DEMAND_EXCEEDS_A_CAPACITY)


def test_necessary_check_passes_and_flow_confirms():
    inst = make([[0, 0], [0, 0]], [1, 1], [1, 1], [2, 0], [2, 2])
    assert necessary_feasibility(inst) is None
    assert flow.feasible(inst)


def test_necessary_check_is_not_sufficient():
    # b_0 needs two partners but a_1 has capacity 0
    inst = make([[0, 0], [0, 0]], [2, 0], [2, 0], [2, 0], [2, 2])
    assert necessary_feasibility(inst) is None
    assert not flow.feasible(inst)


def _from_points(a, b, metric, scale):
    return from_points([a], [b], [1], [1], [1], [1], metric=metric, scale=scale).cost[0][0]


def test_from_points_examples():
    assert _from_points((0, 0), (3, 4), "euclidean", 1) == 5
    assert _from_points((0, 0), (2, 3), "manhattan", 10) == 50
    assert _from_points((0, 0), (2, -3), "chebyshev", 1) == 3


def _mp_round(x):
    x = mpmath.mpf(x)
    return int(mpmath.floor(abs(x) + mpmath.mpf("0.5"))) * (1 if x >= 0 else -1)


@pytest.mark.parametrize("a, b, scale", [
    ((0, 0), (1, 1), 1000),
    ((0.1, 0.2), (0.7, -1.3), 10**6),
    ((0, 0, 0), (1, 2, 2), 7),
    ((0,), (2.5,), 1),
])
def test_euclidean_matches_arbitrary_precision(a, b, scale):
    mpmath.mp.dps = 60
    exact = mpmath.sqrt(sum((mpmath.mpf(x) - mpmath.mpf(y)) ** 2 for x, y in zip(a, b))) * scale
    assert _from_points(a, b, "euclidean", scale) == _mp_round(exact)


def test_sqrt2_scaled():
    assert _from_points((0, 0), (1, 1), "euclidean", 1000) == 1414


def test_half_rounds_away_from_zero():
    assert _from_points((0,), (2.5,), "manhattan", 1) == 3
    assert _from_points((0,), (0.5,), "manhattan", 1) == 1


def test_from_points_rejects_bad_input():
    with pytest.raises(ValueError):
        from_points([(0, 0)], [(1, 1)], [1], [1], [1], [1], scale=0)
    with pytest.raises(ValueError):
        from_points([(0, 0)], [(float("inf"), 1)], [1], [1], [1], [1])
    with pytest.raises(ValidationError):
        from_points([(0,)], [(1e9,)], [1], [1], [1], [1], scale=10**4)


def test_integer_manhattan_is_exact_distance():
    pts_a = [(0, 0), (3, -2)]
    pts_b = [(1, 5), (-4, 2), (7, 7)]
    inst = from_points(pts_a, pts_b, [0, 0], [3, 3], [0, 0, 0], [2, 2, 2], metric="manhattan")
    for i, a in enumerate(pts_a):
        for j, b in enumerate(pts_b):
            assert inst.cost[i][j] == abs(a[0] - b[0]) + abs(a[1] - b[1])


def test_json_cost_form_round_trip(minimal):
    assert instance_from_json(json.loads(json.dumps(minimal.to_json()))) == minimal


def test_json_point_form():
    doc = {"s": 1, "t": 1, "alpha": [1], "alpha_cap": [1], "beta": [1], "beta_cap": [1],
           "points_a": [[0, 0]], "points_b": [[3, 4]], "metric": "euclidean", "scale": 1}
    assert instance_from_json(doc).cost == ((5,),)


@pytest.mark.parametrize("patch", [
    {"extra": 1},
    {"alpha": [1, 1]},
    {"cost": [[5, 5]]},
    {"cost": [[5.5]]},
])
def test_json_rejects(minimal, patch):
    doc = minimal.to_json() | patch
    with pytest.raises(ValueError):
        instance_from_json(doc)


def test_violations_reports_bounds(minimal):
    assert violations(minimal, MatchResult(pairs=((0, 0),), total_cost=5)) == []
    assert violations(minimal, MatchResult(pairs=(), total_cost=0))
    assert violations(minimal, MatchResult(pairs=((0, 0),), total_cost=4))


def _is_valid(inst):
    try:
        validate(inst)
    except ValidationError:
        return False
    return True


@given(instances(max_s=4, max_t=4))
def test_transpose_preserves_validity(inst):
    assert _is_valid(inst) == _is_valid(transpose(inst))
    assert transpose(transpose(inst)) == inst


@given(instances())
def test_validate_is_pure(inst):
    assert _is_valid(inst) == _is_valid(inst)
