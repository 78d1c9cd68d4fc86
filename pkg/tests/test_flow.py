import pytest
from hypothesis import assume, given, settings

from conftest import instances
from mmdc import flow
from mmdc.instance import Infeasible, ProblemInstance, ValidationError, validate, violations, with_cost
from mmdc.oracle import brute_force


def make(cost, alpha, alpha_cap, beta, beta_cap):
    return ProblemInstance.create(cost, alpha, alpha_cap, beta, beta_cap)


def _valid(inst):
    try:
        validate(inst)
    except ValidationError:
        return False
    return True


def test_minimal(minimal):
    assert flow.feasible(minimal)
    r = flow.min_cost(minimal)
    assert r.pairs == ((0, 0),) and r.total_cost == 5


def test_column_capacity_infeasible():
    inst = make([[0], [0]], [1, 1], [1, 1], [1], [1])
    assert not flow.feasible(inst)
    with pytest.raises(Infeasible):
        flow.min_cost(inst)


def test_two_by_two():
    assert flow.min_cost(make([[1, 2], [3, 4]], [1, 1], [2, 2], [1, 1], [2, 2])).total_cost == 5


def test_negative_entry():
    inst = make([[1, 2], [3, -4]], [1, 1], [2, 2], [1, 1], [2, 2])
    assert flow.min_cost(inst).total_cost == brute_force(inst).total_cost == -3


def test_negative_pairs_taken_up_to_capacity():
    inst = make([[-1, -1, -1]], [0], [2], [0, 0, 0], [1, 1, 1])
    assert flow.min_cost(inst).total_cost == -2


def test_network_shape(minimal):
    net = flow.build_network(minimal)
    assert all(a.lower <= a.upper for a in net.arcs)
    assert len(net.arcs) == minimal.s + minimal.s * minimal.t + minimal.t + 1


@given(instances(max_s=3, max_t=3))
@settings(max_examples=300)
def test_matches_brute_force(inst):
    assume(_valid(inst))
    try:
        expected = brute_force(inst).total_cost
    except Infeasible:
        assert not flow.feasible(inst)
        return
    r = flow.min_cost(inst)
    assert r.total_cost == expected
    assert violations(inst, r) == []


@given(instances(max_s=3, max_t=3, cost_lo=0, cost_hi=9))
def test_negating_a_nonnegative_entry_never_raises_optimum(inst):
    assume(_valid(inst) and flow.feasible(inst))
    base = flow.min_cost(inst).total_cost
    for i in range(inst.s):
        for j in range(inst.t):
            assert flow.min_cost(with_cost(inst, i, j, -inst.cost[i][j])).total_cost <= base
