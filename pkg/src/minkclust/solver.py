"""k-Clustering solvers.

The main solver reduces clustering to repeated Cluster Selection via color
coding over initial clusters: color the initial clusters, enumerate families
of disjoint color subsets (each future composite cluster), and search the
candidate cost set for the cheapest feasible budget per part.  A brute-force
partition oracle over initial clusters provides ground truth at desk scale.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import mpmath

from .centroids import WeightedCluster, optimal_cluster_cost
from .core import Clustering, Dataset, DistanceOrder, InitialCluster, merge_cost_bound, regularize
from .cost_model import Cost, DEFAULT_TOL, cost_eval, cost_le, enumerate_cost_set
from .selection import SelectionInstance, SelectionResult, solve_selection


@dataclass(frozen=True)
class ClusteringInstance:
    dataset: Dataset
    k: int
    budget: Cost
    order: DistanceOrder

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one cluster")


@dataclass(frozen=True)
class SolveConfig:
    """Knobs for the color-coding solver.

    ``policy`` is one of ``auto`` (random colorings, iteration count capped),
    ``exhaustive`` (complete search over colorings up to color renaming; the
    decision is exact), or ``iters`` (explicit random iteration count).
    """

    seed: int = 0
    policy: str = "auto"
    iterations: int | None = None
    max_iterations: int = 100_000
    exhaustive_cap: int = 1_000_000
    selection_kwargs: dict = field(default_factory=dict)
    tol: float = DEFAULT_TOL


@dataclass
class SolveResult:
    decision: bool
    clustering: Clustering | None
    stats: dict = field(default_factory=dict)


def cluster_count(num_initial: int, family: Sequence[Iterable[int]]) -> int:
    """Number of clusters produced by merging each family part: the initial
    cluster count minus the merged colors plus one cluster per part."""
    sizes = [len(tuple(p)) for p in family]
    return num_initial - sum(sizes) + len(sizes)


def enumerate_color_partitions(colors: Iterable[int]) -> Iterator[tuple[frozenset[int], ...]]:
    """Every family of pairwise disjoint subsets (each of size >= 2) of the
    given colors, in canonical order without duplicates.  The empty family is
    included: it merges nothing."""
    pool = sorted(set(colors))

    def rec(remaining: tuple[int, ...]) -> Iterator[tuple[frozenset[int], ...]]:
        if not remaining:
            yield ()
            return
        first, rest = remaining[0], remaining[1:]
        # families that leave the first color unmerged
        yield from rec(rest)
        # families whose part containing the first color has size >= 2
        for size in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, size):
                part = frozenset((first,) + extra)
                leftover = tuple(x for x in rest if x not in part)
                for tail in rec(leftover):
                    yield (part,) + tail

    yield from rec(tuple(pool))


def merge_families(num_items: int, excess: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Families of disjoint subsets (size >= 2) of range(num_items) whose total
    merge excess sum(len - 1) equals ``excess``, canonically ordered."""
    def rec(pool: tuple[int, ...], left: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if left == 0:
            yield ()
            return
        for ai in range(len(pool)):
            anchor = pool[ai]
            rest = pool[ai + 1:]
            for extra_size in range(1, min(left, len(rest)) + 1):
                for extra in itertools.combinations(rest, extra_size):
                    part = (anchor,) + extra
                    leftover = tuple(x for x in rest if x not in extra)
                    for tail in rec(leftover, left - extra_size):
                        yield (part,) + tail

    yield from rec(tuple(range(num_items)), excess)


def _assemble_clustering(
    order: DistanceOrder,
    initial: Sequence[InitialCluster],
    parts: Sequence[Sequence[int]],
) -> Clustering:
    used = set()
    clusters: list[tuple[tuple, int]] = []
    member_lists: list[tuple[tuple[tuple, int], ...]] = []
    centroids = []
    costs = []
    for part in parts:
        members = tuple((initial[i].representative, initial[i].size) for i in part)
        cluster = WeightedCluster(
            tuple(m[0] for m in members), tuple(m[1] for m in members)
        )
        centroid, cost = optimal_cluster_cost(order, cluster)
        member_lists.append(members)
        centroids.append(centroid)
        costs.append(cost)
        used.update(part)
    for i, ic in enumerate(initial):
        if i not in used:
            member_lists.append(((ic.representative, ic.size),))
            centroids.append(ic.representative)
            costs.append(Cost.of(0))
    total = Cost.of(0)
    for c in costs:
        total = total + c
    return Clustering(tuple(member_lists), tuple(centroids), tuple(costs), total)


@dataclass
class BruteForceResult:
    decision: bool
    clustering: Clustering | None
    min_cost: Cost
    stats: dict = field(default_factory=dict)


def solve_bruteforce(
    inst: ClusteringInstance,
    family_cap: int = 5_000_000,
    tol: float = DEFAULT_TOL,
) -> BruteForceResult:
    """Exact minimum over all regular clusterings into at most k nonempty
    clusters.

    Cluster costs only grow under merging, so the optimum merges exactly
    ``len(initial) - k`` excess units; only merge families of that excess are
    enumerated, with a per-branch bound from the per-merge cost floor.
    """
    initial = regularize(inst.dataset)
    n_ic = len(initial)
    excess = n_ic - inst.k
    if excess <= 0:
        clustering = _assemble_clustering(inst.order, initial, ())
        return BruteForceResult(True, clustering, Cost.of(0), {"families": 1})

    alpha = float(merge_cost_bound(inst.order))
    part_cache: dict[tuple[int, ...], tuple[float, Cost]] = {}

    def part_cost(part: tuple[int, ...]) -> tuple[float, Cost]:
        hit = part_cache.get(part)
        if hit is None:
            cluster = WeightedCluster(
                tuple(initial[i].representative for i in part),
                tuple(initial[i].size for i in part),
            )
            _, cost = optimal_cluster_cost(inst.order, cluster)
            hit = (float(cost_eval(cost)), cost)
            part_cache[part] = hit
        return hit

    best_cost: Cost | None = None
    best_float = math.inf
    best_family: tuple[tuple[int, ...], ...] | None = None
    families = 0

    def rec(pool: tuple[int, ...], left: int, partial: list[Cost], partial_f: float):
        nonlocal best_cost, best_float, best_family, families
        if partial_f + alpha * left >= best_float - 1e-12 and best_cost is not None:
            return
        if left == 0:
            families += 1
            if families > family_cap:
                raise RuntimeError("family cap exceeded")
            total = Cost.of(0)
            for c in partial:
                total = total + c
            if best_cost is None or not cost_le(best_cost, total, tol):
                best_cost = total
                best_float = float(cost_eval(total))
                best_family = tuple(tuple(sorted(p)) for p in current_parts)
            return
        for ai in range(len(pool)):
            anchor = pool[ai]
            rest = pool[ai + 1:]
            for extra_size in range(1, min(left, len(rest)) + 1):
                for extra in itertools.combinations(rest, extra_size):
                    part = (anchor,) + extra
                    f, cost = part_cost(part)
                    if partial_f + f + alpha * (left - extra_size) >= best_float - 1e-12:
                        continue
                    leftover = tuple(x for x in rest if x not in extra)
                    current_parts.append(part)
                    partial.append(cost)
                    rec(leftover, left - extra_size, partial, partial_f + f)
                    partial.pop()
                    current_parts.pop()

    current_parts: list[tuple[int, ...]] = []
    rec(tuple(range(n_ic)), excess, [], 0.0)
    if best_family is None:
        # no merge family exists (k too small for the dataset)
        return BruteForceResult(False, None, Cost.of(0), {"families": 0})
    clustering = _assemble_clustering(inst.order, initial, best_family)
    decision = cost_le(best_cost, inst.budget, tol)
    return BruteForceResult(decision, clustering, best_cost,
                            {"families": families})


def coloring_success_estimate(t_colors: int, trials: int, seed: int = 0) -> tuple[float, int]:
    """Monte-Carlo estimate of the probability that t items independently
    colored with t colors are all distinct."""
    if t_colors < 1:
        raise ValueError("need at least one color")
    rnd = random.Random(seed)
    hits = 0
    for _ in range(trials):
        colors = {rnd.randrange(t_colors) for _ in range(t_colors)}
        if len(colors) == t_colors:
            hits += 1
    return hits / trials, trials


def _rainbow_colorings(n: int, max_colors: int) -> Iterator[tuple[int, ...]]:
    # Exact coverage of the full coloring space: the merged initial clusters
    # of any feasible solution number at most the color count, so it suffices
    # to give each candidate merged subset distinct colors once while lumping
    # everything else with color 0 (extra group members only help the
    # selection subroutine).  One coloring per subset of size 2..max_colors.
    for size in range(2, max_colors + 1):
        for subset in itertools.combinations(range(n), size):
            coloring = [0] * n
            for color, ic in enumerate(subset):
                coloring[ic] = color
            yield tuple(coloring)


def _ceil_ratio(budget: Cost, alpha: Fraction) -> int:
    if budget.exact is not None:
        val = 2 * budget.exact / alpha
        return -((-val.numerator) // val.denominator)
    return int(mpmath.ceil(2 * cost_eval(budget) / float(alpha)))


def solve_color_coding(inst: ClusteringInstance, cfg: SolveConfig | None = None) -> SolveResult:
    """Color-coding clustering solver.

    Regularizes the dataset, colors the initial clusters with T colors
    (T from the budget and the per-merge cost floor), enumerates valid color
    families, and per part searches the candidate cost set for the minimum
    feasible Cluster Selection budget.  A yes always carries a verified
    witness clustering.  Under the randomized policies a no is one sided;
    the exhaustive policy is exact.
    """
    cfg = cfg or SolveConfig()
    order = inst.order
    initial = regularize(inst.dataset)
    n_ic = len(initial)
    stats: dict = {"iterations": 0, "families": 0, "selection_calls": 0}

    if n_ic == 0 or inst.k >= n_ic:
        clustering = _assemble_clustering(order, initial, ())
        stats["confidence"] = 1.0
        return SolveResult(True, clustering, stats)

    alpha = merge_cost_bound(order)
    t_colors = max(1, _ceil_ratio(inst.budget, alpha))
    stats["T"] = t_colors
    cost_set = enumerate_cost_set(order, inst.budget, n=inst.dataset.total_count,
                                  tol=cfg.tol)
    stats["cost_set_size"] = len(cost_set)

    # cache: per bundle of groups, the smallest feasible cost index and witness
    min_cache: dict[tuple, tuple[int, SelectionResult] | None] = {}

    def min_feasible(groups: tuple, weights: tuple) -> tuple[Cost, SelectionResult] | None:
        key = (groups, weights)
        if key in min_cache:
            hit = min_cache[key]
            return None if hit is None else (cost_set.members[hit[0]], hit[1])
        found = None
        for idx, d_cost in enumerate(cost_set.members):
            sel = SelectionInstance(groups, weights, inst.dataset.dimension,
                                    d_cost, order)
            stats["selection_calls"] += 1
            res = solve_selection(sel, **cfg.selection_kwargs)
            if res.decision:
                found = (idx, res)
                break
        min_cache[key] = found
        return None if found is None else (cost_set.members[found[0]], found[1])

    def try_coloring(coloring: Sequence[int]) -> SolveResult | None:
        classes: dict[int, list[int]] = {}
        for ic_idx, color in enumerate(coloring):
            classes.setdefault(color, []).append(ic_idx)
        used = sorted(classes)
        for family in enumerate_color_partitions(used):
            if cluster_count(n_ic, family) != inst.k:
                continue
            stats["families"] += 1
            running = Cost.of(0)
            parts_members: list[tuple[int, ...]] = []
            ok = True
            for color_set in family:
                groups = []
                weights = []
                index_map = []
                for color in sorted(color_set):
                    members = classes[color]
                    groups.append(tuple(initial[i].representative for i in members))
                    weights.append(tuple(initial[i].size for i in members))
                    index_map.append(members)
                hit = min_feasible(tuple(groups), tuple(weights))
                if hit is None:
                    ok = False
                    break
                d_cost, witness = hit
                running = running + d_cost
                if not cost_le(running, inst.budget, cfg.tol):
                    ok = False
                    break
                parts_members.append(
                    tuple(index_map[g][i] for g, i in enumerate(witness.indices))
                )
            if ok:
                clustering = _assemble_clustering(order, initial, parts_members)
                if cost_le(clustering.total_cost, inst.budget, cfg.tol):
                    return SolveResult(True, clustering, stats)
        return None

    if cfg.policy == "exhaustive":
        if t_colors >= n_ic:
            colorings: Iterable[Sequence[int]] = [tuple(range(n_ic))]
        else:
            colorings = _rainbow_colorings(n_ic, t_colors)
        for coloring in colorings:
            stats["iterations"] += 1
            if stats["iterations"] > cfg.exhaustive_cap:
                raise RuntimeError("exhaustive coloring cap exceeded")
            hit = try_coloring(coloring)
            if hit is not None:
                hit.stats["confidence"] = 1.0
                return hit
        stats["confidence"] = 1.0
        return SolveResult(False, None, stats)

    if cfg.policy == "iters":
        if cfg.iterations is None or cfg.iterations < 1:
            raise ValueError("iters policy needs an explicit iteration count")
        n_iters = cfg.iterations
    elif cfg.policy == "auto":
        try:
            suggested = math.ceil(math.exp(t_colors))
        except OverflowError:
            suggested = cfg.max_iterations
        n_iters = min(suggested, cfg.max_iterations)
    else:
        raise ValueError(f"unknown policy {cfg.policy!r}")

    for it in range(n_iters):
        stats["iterations"] += 1
        rnd = random.Random(f"{cfg.seed}:{it}")
        coloring = [rnd.randrange(t_colors) for _ in range(n_ic)]
        hit = try_coloring(coloring)
        if hit is not None:
            hit.stats["confidence"] = 1.0
            return hit
    miss = (1.0 - math.exp(-t_colors)) ** n_iters if t_colors < 500 else 1.0
    stats["confidence"] = 1.0 - miss
    return SolveResult(False, None, stats)
