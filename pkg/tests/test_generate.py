import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mmdc import flow
from mmdc.generate import GenSpec, generate
from mmdc.instance import validate
from mmdc.oracle import count_feasible


def test_same_seed_same_instance():
    spec = GenSpec(s=3, t=4, seed=1)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec(s=3, t=4, seed=2))


def test_zero_slack_uses_witness_sums():
    inst = generate(GenSpec(s=2, t=2, seed=7, slack=0))
    assert inst.alpha == inst.alpha_cap
    assert inst.beta == inst.beta_cap
    assert sum(inst.alpha) == sum(inst.beta)
    assert count_feasible(inst) >= 1


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 3), st.integers(0, 2**32))
@settings(max_examples=200)
def test_witness_instances_are_feasible(s, t, slack, seed):
    inst = generate(GenSpec(s=s, t=t, seed=seed, slack=slack))
    validate(inst)
    assert flow.feasible(inst)


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32))
def test_unconstrained_instances_are_valid(s, t, seed):
    validate(generate(GenSpec(s=s, t=t, seed=seed, witness=False)))


def test_cost_range_respected():
    inst = generate(GenSpec(s=5, t=5, cost_lo=-2, cost_hi=3, seed=3))
    assert all(-2 <= c <= 3 for row in inst.cost for c in row)


@pytest.mark.parametrize("kw", [dict(s=0, t=1), dict(s=1, t=1, cost_lo=2, cost_hi=1), dict(s=1, t=1, slack=-1)])
def test_invalid_spec(kw):
    with pytest.raises(ValueError):
        GenSpec(**kw)
