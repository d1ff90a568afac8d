import dataclasses
import random
from fractions import Fraction

import pytest

from minkclust import (
    Cost,
    DistanceOrder,
    EnumerationCapExceeded,
    SelectionInstance,
    cost_le,
    gen_l0_selection_from_mcc,
    gen_l1_selection_from_mcc,
    gen_linf_selection_from_mcc,
    gen_lp_selection_from_mcc,
    select_bruteforce,
    select_fixed_centroid,
    select_l0,
    select_l2,
    select_linf,
    select_lp01,
    solve_selection,
)
from tests.helpers import (
    EX_CLIQUE_COLORED,
    EX_LINF_COLORED,
    random_selection_instance,
)


def fig_l1_instance():
    return gen_l1_selection_from_mcc(EX_CLIQUE_COLORED, 3)


def fig_lp_instance():
    return gen_lp_selection_from_mcc(EX_CLIQUE_COLORED, 3, Fraction(2))


def test_instance_validation():
    with pytest.raises(ValueError):
        SelectionInstance.of([[(0,)], [(0,)]], Cost.of(1), DistanceOrder.l1())
    with pytest.raises(ValueError):
        SelectionInstance.of([[]], Cost.of(1), DistanceOrder.l1())
    with pytest.raises(ValueError):
        SelectionInstance.of([[(0,), (1, 2)]], Cost.of(1), DistanceOrder.l1())
    with pytest.raises(ValueError):
        SelectionInstance.of([[(0,)]], Cost.of(1), DistanceOrder.l1(), weights=[[0]])


def test_fixed_centroid_examples():
    inst = fig_l1_instance()
    res = select_fixed_centroid(inst, (1, 2, 4))
    assert res.decision and res.cost.exact == 15

    singles = SelectionInstance.of([[(3, 3)], [(3, 4)]], Cost.of(99), DistanceOrder.l1())
    res = select_fixed_centroid(singles, (3, 3))
    assert res.cost.exact == 1

    lp = fig_lp_instance()
    res = select_fixed_centroid(lp, (Fraction(2, 3), Fraction(2, 3), 0, Fraction(2, 3)))
    assert res.decision and res.cost.exact == 2


def test_fixed_centroid_dimension_check():
    with pytest.raises(ValueError):
        select_fixed_centroid(fig_l1_instance(), (1, 2))


def test_bruteforce_examples():
    lp = fig_lp_instance()
    res = select_bruteforce(lp)
    assert res.decision and res.cost.exact == 2

    single = SelectionInstance.of([[(5,)]], Cost.of(0), DistanceOrder.l2())
    res = select_bruteforce(single)
    assert res.decision and res.cost.exact == 0 and res.indices == (0,)

    inst14 = dataclasses.replace(fig_l1_instance(), budget=Cost.of(14))
    assert not select_bruteforce(inst14).decision


def test_bruteforce_cap():
    groups = [[(i, j) for j in range(6)] for i in range(5)]
    inst = SelectionInstance.of(groups, Cost.of(1), DistanceOrder.l1())
    with pytest.raises(EnumerationCapExceeded):
        select_bruteforce(inst, cap=100)


def test_select_lp01_figure():
    inst = fig_l1_instance()
    res = select_lp01(inst)
    assert res.decision and res.cost.exact == 15
    assert not select_lp01(dataclasses.replace(inst, budget=Cost.of(14))).decision


def test_select_lp01_phase1_shortcut():
    # identical singleton groups: the shared vector is an optimal centroid
    inst = SelectionInstance.of([[(2, 2)]], Cost.of(0), DistanceOrder.l1())
    res = select_lp01(inst)
    assert res.decision and res.stats["phase"] == "input-vector"
    assert not res.stats["phase2_entered"]


def test_select_lp01_pattern_mode_matches():
    rnd = random.Random(31)
    for _ in range(60):
        budget = Cost.of(rnd.randint(1, 3))
        inst = random_selection_instance(rnd, DistanceOrder.l1(), budget)
        a = select_lp01(inst, mode="exhaustive").decision
        b = select_lp01(inst, mode="pattern").decision
        assert a == b == select_bruteforce(inst).decision


def test_select_l2_figure_and_tbound():
    inst = fig_lp_instance()
    res = select_l2(inst)
    assert res.decision and res.cost.exact == 2
    # group-count rejection: 2 groups at budget 0
    reject = SelectionInstance.of([[(0,)], [(1,)]], Cost.of(0), DistanceOrder.l2())
    res = select_l2(reject)
    assert not res.decision and res.stats.get("rejected") == "group-count"


def test_select_linf_figure():
    inst = gen_linf_selection_from_mcc(EX_LINF_COLORED, 3)
    res = select_linf(inst)
    assert res.decision and res.cost.exact == 3
    single = SelectionInstance.of([[(0, 0), (5, 5)]], Cost.of(0), DistanceOrder.linf())
    res = select_linf(single)
    assert res.decision and res.cost.exact == 0


def test_select_l0_figure():
    inst = gen_l0_selection_from_mcc(EX_CLIQUE_COLORED, 3)
    res = select_l0(inst)
    assert res.decision and res.centroid == (1, 2, 4)
    common = SelectionInstance.of(
        [[(1, 1), (0, 3)], [(1, 2), (3, 3)]], Cost.of(1), DistanceOrder.l0()
    )
    assert select_l0(common).decision


ENVELOPES = {
    "lp-half": (DistanceOrder.lp(Fraction(1, 2)), dict(d_max=4, coord_hi=3), 4, 101),
    "lp-one": (DistanceOrder.l1(), dict(d_max=4, coord_hi=3), 4, 102),
    "l2": (DistanceOrder.l2(), dict(d_max=3, coord_hi=2), 3, 103),
    "linf": (DistanceOrder.linf(), dict(d_max=3, coord_lo=-2, coord_hi=2), 2, 104),
    "l0": (DistanceOrder.l0(), dict(d_max=3, coord_hi=4), 3, 105),
}


@pytest.mark.parametrize("name", list(ENVELOPES), ids=str)
def test_solver_oracle_equivalence_sample(name):
    """Quick per-solver slice of the full acceptance sweep."""
    order, kwargs, budget_hi, seed = ENVELOPES[name]
    rnd = random.Random(seed)
    for trial in range(120):
        budget = Cost.of(rnd.randint(0, budget_hi))
        inst = random_selection_instance(rnd, order, budget, **kwargs)
        fast = solve_selection(inst)
        slow = select_bruteforce(inst)
        assert fast.decision == slow.decision, (trial, inst)
        if fast.decision:
            check = select_fixed_centroid(inst, fast.centroid)
            assert cost_le(check.cost, inst.budget, 1e-9)


def test_monotone_in_budget():
    rnd = random.Random(33)
    for _ in range(20):
        inst0 = random_selection_instance(rnd, DistanceOrder.l1(), Cost.of(0))
        answers = []
        for budget in range(0, 5):
            inst = dataclasses.replace(inst0, budget=Cost.of(budget))
            answers.append(select_lp01(inst).decision)
        assert answers == sorted(answers)  # once yes, stays yes


def test_basis_budget_selection():
    # an irrational budget exercised end to end: sqrt(2) covers a unit gap
    order = DistanceOrder.lp(Fraction(1, 2))
    budget = Cost.basis({2: 1}, Fraction(1, 2))
    inst = SelectionInstance.of([[(0,)], [(1,)]], budget, order)
    res = select_lp01(inst)
    assert res.decision  # cost 1 <= sqrt(2)
    tight = SelectionInstance.of([[(0,)], [(2,)]], budget, order)
    res2 = select_lp01(tight)
    assert res2.decision  # gap 2 costs sqrt(2) exactly
    no = SelectionInstance.of([[(0,)], [(3,)]], budget, order)
    assert not select_lp01(no).decision  # sqrt(3) > sqrt(2)


def test_phase1_sufficiency_counter():
    """When an input vector is an optimal centroid, the first phase settles
    the instance and the enumeration phase is never entered."""
    rnd = random.Random(41)
    seen = 0
    for _ in range(200):
        inst = random_selection_instance(
            rnd, DistanceOrder.l1(), Cost.of(rnd.randint(1, 4)), weight_max=2
        )
        slow = select_bruteforce(inst)
        all_vecs = {pt for g in inst.groups for pt in g}
        if not (slow.decision and tuple(slow.centroid) in all_vecs):
            continue
        seen += 1
        fast = select_lp01(inst)
        assert fast.decision
        assert fast.stats["phase"] == "input-vector"
        assert not fast.stats["phase2_entered"]
    assert seen > 10


def test_enumeration_caps_raise():
    groups = [
        [tuple((i + j) % 5 for j in range(6)) for i in range(3)],
        [tuple((i + j + 7) % 11 for j in range(6)) for i in range(3)],
    ]
    inst = SelectionInstance.of(groups, Cost.of(4), DistanceOrder.l0())
    with pytest.raises(EnumerationCapExceeded):
        select_l0(inst, centroid_cap=10)
    inst_linf = SelectionInstance.of(groups, Cost.of(2), DistanceOrder.linf())
    with pytest.raises(EnumerationCapExceeded):
        select_linf(inst_linf, centroid_cap=0)
    inst_lp = SelectionInstance.of(groups, Cost.of(4), DistanceOrder.l1())
    with pytest.raises(EnumerationCapExceeded):
        select_lp01(inst_lp, centroid_cap=1)
