import dataclasses
import random
from fractions import Fraction

import pytest

from minkclust import (
    ClusteringInstance,
    Cost,
    Dataset,
    DistanceOrder,
    SolveConfig,
    WeightedCluster,
    cluster_count,
    coloring_success_estimate,
    cost_le,
    enumerate_color_partitions,
    gen_l0_clustering_from_clique,
    gen_linf2_from_hioct,
    gen_linf_clustering_from_clique,
    HioctInstance,
    merge_families,
    optimal_cluster_cost,
    regularize,
    solve_bruteforce,
    solve_color_coding,
)
from tests.helpers import (
    EX_CLIQUE_GRAPH,
    EX_LINF_GRAPH,
    EX_OCT_GRAPH,
    random_clustering_instance,
)


def fam_set(colors):
    return {tuple(sorted(tuple(sorted(p)) for p in fam))
            for fam in enumerate_color_partitions(colors)}


def test_enumerate_color_partitions_examples():
    assert fam_set([1, 2]) == {(), ((1, 2),)}
    assert fam_set([1, 2, 3]) == {
        (), ((1, 2),), ((1, 3),), ((2, 3),), ((1, 2, 3),)
    }
    assert fam_set([7]) == {()}
    # family counts over n colors follow the Bell numbers
    assert [len(fam_set(range(n))) for n in range(1, 6)] == [1, 2, 5, 15, 52]


def test_merge_families_counts():
    fams = list(merge_families(4, 2))
    # one triple (4 ways) or two disjoint pairs (3 ways)
    assert len(fams) == 4 + 3
    assert all(sum(len(p) - 1 for p in fam) == 2 for fam in fams)
    assert len(set(fams)) == len(fams)


def test_cluster_count_examples():
    assert cluster_count(8, [(1, 2), (3, 4, 5)]) == 5
    assert cluster_count(8, []) == 8
    assert cluster_count(3, [(1, 2, 3)]) == 1


def test_solve_bruteforce_figures():
    inst = gen_l0_clustering_from_clique(EX_CLIQUE_GRAPH, 3)
    res = solve_bruteforce(inst)
    assert res.decision and res.min_cost.exact == 3

    tiny = ClusteringInstance(Dataset(1, ((5,),), (1,)), 1, Cost.of(0), DistanceOrder.l2())
    res = solve_bruteforce(tiny)
    assert res.decision and res.min_cost.exact == 0


def test_solve_bruteforce_linfoct_suppressed():
    """The bare four-vector instance: the displayed partition costs exactly 6,
    but {x1,x3,x4} + {x2} is cheaper at 5, so the minimum is 5 and the
    decision at budget 6 is yes.  (The documented claim of an optimum of 6
    holds only for the partition shown, not over all partitions.)"""
    inst = gen_linf2_from_hioct(HioctInstance(EX_OCT_GRAPH, 2),
                                include_isolated_edges=False)
    assert inst.dataset.total_count == 4
    assert inst.dataset.dimension == 5
    assert inst.budget.exact == 6
    res = solve_bruteforce(inst)
    assert res.decision
    assert res.min_cost.exact == 5
    pts = inst.dataset.points
    pair_a = WeightedCluster.of([pts[0], pts[1]])
    pair_b = WeightedCluster.of([pts[2], pts[3]])
    shown = (optimal_cluster_cost(inst.order, pair_a)[1].exact
             + optimal_cluster_cost(inst.order, pair_b)[1].exact)
    assert shown == 6


def test_solve_bruteforce_respects_k():
    # two far-apart points forced into one cluster
    ds = Dataset(1, ((0,), (10,)), (1, 1))
    inst = ClusteringInstance(ds, 1, Cost.of(1), DistanceOrder.l1())
    res = solve_bruteforce(inst)
    assert not res.decision and res.min_cost.exact == 10
    # k beyond the initial cluster count pads with empties at cost zero
    inst2 = ClusteringInstance(ds, 5, Cost.of(0), DistanceOrder.l1())
    res2 = solve_bruteforce(inst2)
    assert res2.decision and res2.min_cost.exact == 0


def test_color_coding_figures():
    inst = gen_l0_clustering_from_clique(EX_CLIQUE_GRAPH, 3)
    res = solve_color_coding(inst, SolveConfig(policy="exhaustive"))
    assert res.decision
    comp = [c for c in res.clustering.clusters if len(c) > 1]
    assert len(comp) == 1 and len(comp[0]) == 3
    assert res.clustering.total_cost.exact == 3
    # below the minimum the exhaustive policy is a certain no
    lower = dataclasses.replace(inst, budget=Cost.of(2))
    res2 = solve_color_coding(lower, SolveConfig(policy="exhaustive"))
    assert not res2.decision and res2.stats["confidence"] == 1.0

    inst3 = gen_linf_clustering_from_clique(EX_LINF_GRAPH, 3)
    res3 = solve_color_coding(inst3, SolveConfig(policy="exhaustive"))
    assert res3.decision and res3.clustering.total_cost.exact == 3
    comp3 = [c for c in res3.clustering.clusters if len(c) > 1]
    members = {pt for c in comp3 for pt, _ in c}
    assert len(comp3) == 1 and len(members) == 3


def test_color_coding_trivial_cases():
    ds = Dataset(2, ((0, 0), (1, 1)), (2, 1))
    inst = ClusteringInstance(ds, 2, Cost.of(0), DistanceOrder.l1())
    res = solve_color_coding(inst, SolveConfig(policy="exhaustive"))
    assert res.decision and res.clustering.total_cost.exact == 0
    inst_k5 = ClusteringInstance(ds, 5, Cost.of(0), DistanceOrder.l1())
    assert solve_color_coding(inst_k5, SolveConfig()).decision


def test_color_coding_policies():
    ds = Dataset(1, ((0,), (1,), (5,)), (1, 1, 1))
    inst = ClusteringInstance(ds, 2, Cost.of(1), DistanceOrder.l1())
    for cfg in (
        SolveConfig(policy="exhaustive"),
        SolveConfig(policy="auto", seed=3),
        SolveConfig(policy="iters", iterations=30, seed=4),
    ):
        res = solve_color_coding(inst, cfg)
        assert res.decision
        assert res.clustering.total_cost.exact == 1
    with pytest.raises(ValueError):
        solve_color_coding(inst, SolveConfig(policy="iters"))
    with pytest.raises(ValueError):
        solve_color_coding(inst, SolveConfig(policy="bogus"))


ORDER_BUDGETS = [
    (DistanceOrder.l1(), [0, 1, 2, 3], 201),
    (DistanceOrder.lp(Fraction(1, 2)), [0, 1, 2, 3], 202),
    (DistanceOrder.l2(), [0, Fraction(1, 2), 1, 2], 203),
    (DistanceOrder.linf(), [0, Fraction(1, 2), 1, Fraction(3, 2)], 204),
    (DistanceOrder.l0(), [0, 1, 2, 3], 205),
]


@pytest.mark.parametrize("order,budgets,seed", ORDER_BUDGETS, ids=lambda o: str(o))
def test_color_coding_equals_bruteforce_sample(order, budgets, seed):
    rnd = random.Random(seed)
    for _ in range(30):
        budget = Cost.of(budgets[rnd.randrange(len(budgets))])
        inst = random_clustering_instance(rnd, order, budget, max_initial=5)
        exact = solve_color_coding(inst, SolveConfig(policy="exhaustive"))
        brute = solve_bruteforce(inst)
        assert exact.decision == brute.decision, inst
        if exact.decision:
            clustering = exact.clustering
            # regular output: every initial cluster stays intact
            sizes: dict = {}
            for cluster in clustering.clusters:
                for pt, mult in cluster:
                    assert pt not in sizes
                    sizes[pt] = mult
            expected = {ic.representative: ic.size for ic in regularize(inst.dataset)}
            assert sizes == expected
            assert cost_le(clustering.total_cost, inst.budget, 1e-9)


def test_randomized_no_is_one_sided():
    rnd = random.Random(207)
    for _ in range(40):
        inst = random_clustering_instance(rnd, DistanceOrder.l1(), Cost.of(rnd.randint(0, 2)))
        fast = solve_color_coding(inst, SolveConfig(policy="iters", iterations=5, seed=1))
        brute = solve_bruteforce(inst)
        if fast.decision:
            assert brute.decision  # a yes always carries a verified witness


def test_coloring_success_estimate():
    p1, trials = coloring_success_estimate(1, 100, seed=0)
    assert p1 == 1.0 and trials == 100
    for t_colors, expected in ((2, 0.5), (4, 24 / 256)):
        p, trials = coloring_success_estimate(t_colors, 10_000, seed=5)
        sigma = (expected * (1 - expected) / trials) ** 0.5
        assert abs(p - expected) <= 3 * sigma
