"""Cluster Selection solvers.

Given t disjoint groups of weighted vectors and a budget, decide whether one
vector can be picked from each group so that the optimally-centered composite
cluster costs at most the budget.  A brute-force oracle covers every distance
order; the specialized solvers implement the parameterized algorithms for
exponents p in (0, 1], the squared Euclidean cost, the max distance, and the
Hamming distance.  Inner enumeration loops run on raw integer arithmetic and
every accepted witness is re-verified through the exact cost path before it
is returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath

from .centroids import WeightedCluster, optimal_cluster_cost
from .core import DistanceOrder, Number, Point, distance
from .cost_model import (
    Cost,
    DEFAULT_TOL,
    cost_eval,
    cost_le,
    int_root_floor,
)
from .hypergraph import build_difference_hypergraph, candidate_coordinate_sets


class EnumerationCapExceeded(RuntimeError):
    """Raised when a solver's candidate enumeration outgrows its cap."""


@dataclass(frozen=True)
class SelectionInstance:
    """t disjoint groups of weighted vectors plus a budget."""

    groups: tuple[tuple[Point, ...], ...]
    weights: tuple[tuple[int, ...], ...]
    dimension: int
    budget: Cost
    order: DistanceOrder

    def __post_init__(self) -> None:
        if len(self.groups) < 1:
            raise ValueError("need at least one group")
        if len(self.groups) != len(self.weights):
            raise ValueError("groups and weights must be parallel")
        seen: set[Point] = set()
        for pts, ws in zip(self.groups, self.weights):
            if not pts:
                raise ValueError("groups must be nonempty")
            if len(pts) != len(ws):
                raise ValueError("group weights must be parallel to its vectors")
            for pt in pts:
                if len(pt) != self.dimension:
                    raise ValueError("vector dimension mismatch")
                if pt in seen:
                    raise ValueError("groups must be disjoint")
                seen.add(pt)
            for w in ws:
                if w < 1:
                    raise ValueError("weights must be positive integers")

    @staticmethod
    def of(
        groups: Sequence[Sequence[Sequence[int]]],
        budget: Cost,
        order: DistanceOrder,
        weights: Sequence[Sequence[int]] | None = None,
    ) -> "SelectionInstance":
        gs = tuple(tuple(tuple(p) for p in grp) for grp in groups)
        if weights is None:
            ws = tuple(tuple(1 for _ in grp) for grp in gs)
        else:
            ws = tuple(tuple(w) for w in weights)
        dim = next((len(grp[0]) for grp in gs if grp), 0)
        return SelectionInstance(gs, ws, dim, budget, order)

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @property
    def num_vectors(self) -> int:
        return sum(len(g) for g in self.groups)

    def iter_vectors(self) -> Iterator[tuple[int, int, Point, int]]:
        for g, (pts, ws) in enumerate(zip(self.groups, self.weights)):
            for i, (pt, w) in enumerate(zip(pts, ws)):
                yield g, i, pt, w

    def chosen_cluster(self, indices: Sequence[int]) -> WeightedCluster:
        pts = tuple(self.groups[g][i] for g, i in enumerate(indices))
        ws = tuple(self.weights[g][i] for g, i in enumerate(indices))
        return WeightedCluster(pts, ws)


@dataclass
class SelectionResult:
    decision: bool
    indices: tuple[int, ...] | None = None
    centroid: Point | None = None
    cost: Cost | None = None
    stats: dict = field(default_factory=dict)


def select_fixed_centroid(
    inst: SelectionInstance, centroid: Sequence[Number], tol: float = DEFAULT_TOL
) -> SelectionResult:
    """Greedy completion for a fixed centroid: from each group take the vector
    of minimum weighted distance (lowest index on ties)."""
    if len(centroid) != inst.dimension:
        raise ValueError("centroid dimension mismatch")
    total = Cost.of(0)
    indices: list[int] = []
    for pts, ws in zip(inst.groups, inst.weights):
        best_i = None
        best_cost: Cost | None = None
        for i, (pt, w) in enumerate(zip(pts, ws)):
            c = distance(inst.order, pt, centroid).scaled(w)
            if best_cost is None or not cost_le(best_cost, c, tol):
                best_i, best_cost = i, c
        indices.append(best_i)
        total = total + best_cost
    decision = cost_le(total, inst.budget, tol)
    return SelectionResult(decision, tuple(indices), tuple(centroid), total)


def select_bruteforce(
    inst: SelectionInstance, cap: int = 1_000_000, tol: float = DEFAULT_TOL
) -> SelectionResult:
    """Exhaustive oracle over all group tuples, each costed at its exact
    optimal centroid.  Returns the globally minimal tuple."""
    size = 1
    for g in inst.groups:
        size *= len(g)
    if size > cap:
        raise EnumerationCapExceeded(f"{size} tuples exceed the cap {cap}")
    best: SelectionResult | None = None
    for combo in itertools.product(*(range(len(g)) for g in inst.groups)):
        cluster = inst.chosen_cluster(combo)
        centroid, cost = optimal_cluster_cost(inst.order, cluster)
        if best is None or not cost_le(best.cost, cost, tol):
            best = SelectionResult(False, combo, centroid, cost)
    best.decision = cost_le(best.cost, inst.budget, tol)
    best.stats["tuples"] = size
    return best


def _verified(inst: SelectionInstance, centroid: Sequence[Number], stats: dict,
              tol: float) -> SelectionResult | None:
    res = select_fixed_centroid(inst, centroid, tol)
    if res.decision:
        # report the chosen tuple at its own optimal centroid (never worse
        # than the enumerated one, so the decision stands)
        best_c, best_cost = optimal_cluster_cost(
            inst.order, inst.chosen_cluster(res.indices)
        )
        return SelectionResult(True, res.indices, best_c, best_cost, stats)
    return None


# ---------------------------------------------------------------------------
# exponents p in (0, 1]


def _pow_cache_fn(p: Fraction):
    pf = float(p)
    cache: dict[int, float] = {0: 0.0}

    def powp(gap: int) -> float:
        v = cache.get(gap)
        if v is None:
            v = float(gap) ** pf
            cache[gap] = v
        return v

    return powp


def _greedy_float_lp(inst: SelectionInstance, centroid: Point, powp) -> float:
    total = 0.0
    for pts, ws in zip(inst.groups, inst.weights):
        best = math.inf
        for pt, w in zip(pts, ws):
            s = 0.0
            for a, b in zip(pt, centroid):
                s += powp(abs(a - b))
            v = w * s
            if v < best:
                best = v
        total += best
    return total


def select_lp01(
    inst: SelectionInstance,
    mode: str = "auto",
    centroid_cap: int = 1_000_000,
    pattern_max_vertices: int | None = None,
    pattern_max_edges: int | None = None,
    tol: float = DEFAULT_TOL,
) -> SelectionResult:
    """Solver for exponents p in (0, 1].

    First tries every input vector as the centroid.  Failing that, for each
    pivot choice from the first group it enumerates candidate coordinate
    subsets from the difference hypergraph and all integral centroids that
    deviate from the pivot only there, within the budget's per-coordinate
    radius.  ``mode`` selects exhaustive or pattern-based subset enumeration
    ("auto" goes exhaustive while the active coordinates are few).
    """
    if inst.order.kind != "lp":
        raise ValueError("solver requires an exponent p in (0, 1]")
    p = inst.order.p
    budget = inst.budget
    stats = {"phase2_entered": False, "centroids_tried": 0, "pivots": 0,
             "candidate_sets": 0, "phase": None}

    for _, _, pt, _ in inst.iter_vectors():
        res = _verified(inst, pt, stats, tol)
        if res is not None:
            res.stats["phase"] = "input-vector"
            return res

    budget_f = float(cost_eval(budget))
    d_limit = int(mpmath.floor(cost_eval(budget) * (1 + 1e-30)))
    if budget.exact is not None:
        radius = int_root_floor(budget.exact, p)
    else:
        with mpmath.workdps(50):
            radius = int(mpmath.ceil(cost_eval(budget) ** (1 / float(p))))
    stats["phase2_entered"] = True
    stats["phase"] = "enumerated"

    eligible: list[list[tuple[int, Point, int]]] = []
    for pts, ws in zip(inst.groups, inst.weights):
        rows = [(i, pt, w) for i, (pt, w) in enumerate(zip(pts, ws))
                if cost_le(Cost.of(w), budget, tol)]
        if not rows:
            return SelectionResult(False, stats=stats)
        eligible.append(rows)

    powp = _pow_cache_fn(p)
    all_points = [pt for _, _, pt, _ in inst.iter_vectors()]
    gmin = [min(pt[i] for pt in all_points) for i in range(inst.dimension)]
    gmax = [max(pt[i] for pt in all_points) for i in range(inst.dimension)]
    seen: set[Point] = set()
    for i1, pt1, w1 in eligible[0]:
        stats["pivots"] += 1
        others = [
            (pt, w)
            for g, rows in enumerate(eligible)
            for i, pt, w in rows
            if not (g == 0 and i == i1)
        ]
        host = build_difference_hypergraph(pt1, others, budget)
        if d_limit < 1:
            continue  # centroid equal to the pivot was already tried
        host_mode = mode
        if mode == "auto":
            host_mode = "exhaustive" if len(host.active_vertices()) <= 20 else "pattern"
        cands = candidate_coordinate_sets(
            host, d_limit, host_mode, pattern_max_vertices, pattern_max_edges
        )
        stats["candidate_sets"] += len(cands)
        limit1 = budget_f / w1 + 1e-9

        for subset in cands:
            if not subset:
                continue
            coords = sorted(subset)
            offsets = [0] * len(coords)

            def rec(pos: int, used: float) -> SelectionResult | None:
                if pos == len(coords):
                    candidate = list(pt1)
                    for c, off in zip(coords, offsets):
                        candidate[c] = pt1[c] + off
                    key = tuple(candidate)
                    if key in seen:
                        return None
                    seen.add(key)
                    stats["centroids_tried"] += 1
                    if stats["centroids_tried"] > centroid_cap:
                        raise EnumerationCapExceeded("centroid cap exceeded")
                    if _greedy_float_lp(inst, key, powp) <= budget_f + 1e-6:
                        return _verified(inst, key, stats, tol)
                    return None
                coord = coords[pos]
                for mag in range(1, radius + 1):
                    term = powp(mag)
                    if used + term > limit1:
                        break
                    for off in (mag, -mag):
                        value = pt1[coord] + off
                        if value < gmin[coord] or value > gmax[coord]:
                            continue  # clamping into the box never loses an optimum
                        offsets[pos] = off
                        hit = rec(pos + 1, used + term)
                        if hit is not None:
                            return hit
                return None

            hit = rec(0, 0.0)
            if hit is not None:
                return hit
    return SelectionResult(False, stats=stats)


# ---------------------------------------------------------------------------
# squared Euclidean


def _isqrt_fraction(limit: Fraction) -> int:
    if limit < 0:
        return -1
    b = math.isqrt(int(limit))
    while Fraction((b + 1) ** 2) <= limit:
        b += 1
    while b > 0 and Fraction(b**2) > limit:
        b -= 1
    return b


def select_l2(
    inst: SelectionInstance,
    centroid_cap: int = 5_000_000,
    tol: float = DEFAULT_TOL,
) -> SelectionResult:
    """Solver for the squared Euclidean cost, parameterized by dimension and
    budget.

    Rejects immediately when more than 4D + 1 groups exist.  Otherwise it
    enumerates the heaviest chosen vector, the total cluster weight W, and all
    centroids with coordinates y / W inside both the structural numerator
    bound 16 D^2 (t - 1) and the per-pivot radius (W x - y)^2 <= W^2 D / w.
    """
    if inst.order.kind != "l2":
        raise ValueError("solver requires the squared Euclidean order")
    if inst.budget.exact is None:
        raise ValueError("budget must be rational in this regime")
    d_budget = inst.budget.exact
    t = inst.num_groups
    stats = {"centroids_tried": 0, "pivots": 0}
    if Fraction(t) > 4 * d_budget + 1:
        stats["rejected"] = "group-count"
        return SelectionResult(False, stats=stats)

    max_other = int(4 * d_budget)
    if t >= 2 and max_other < 1:
        return SelectionResult(False, stats=stats)
    numerator_bound = int(16 * d_budget * d_budget * (t - 1))
    d = inst.dimension
    all_points = [pt for _, _, pt, _ in inst.iter_vectors()]
    gmin = [min(pt[i] for pt in all_points) for i in range(d)]
    gmax = [max(pt[i] for pt in all_points) for i in range(d)]
    seen: set[tuple[Fraction, ...]] = set()

    full_rows = [
        list(zip(pts, ws)) for pts, ws in zip(inst.groups, inst.weights)
    ]
    for g_star, i_star, x_star, w_star in inst.iter_vectors():
        # weight filtering only shapes the enumerated W range; candidates are
        # always tested greedily against the full groups
        limit_w = min(w_star, max_other) if t >= 2 else 0
        r_lo = r_hi = 0
        feasible = True
        for g, (pts, ws) in enumerate(zip(inst.groups, inst.weights)):
            if g == g_star:
                continue
            eligible = [w for w in ws if w <= limit_w]
            if not eligible:
                feasible = False
                break
            r_lo += min(eligible)
            r_hi += max(eligible)
        if not feasible:
            continue
        stats["pivots"] += 1

        for r in range(r_lo, r_hi + 1):
            w_total = w_star + r
            limit_sq = Fraction(w_total**2) * d_budget / w_star
            b = min(_isqrt_fraction(limit_sq), numerator_bound)
            if b < 0:
                continue
            centers = [w_total * x_star[i] for i in range(d)]
            ranges = []
            size = 1
            empty = False
            for i, c in enumerate(centers):
                # the mean of any cluster stays inside the coordinate box
                lo = max(c - b, w_total * gmin[i])
                hi = min(c + b, w_total * gmax[i])
                if lo > hi:
                    empty = True
                    break
                ranges.append(range(lo, hi + 1))
                size *= hi - lo + 1
            if empty:
                continue
            stats["centroids_tried"] += size
            if stats["centroids_tried"] > centroid_cap:
                raise EnumerationCapExceeded("centroid cap exceeded")
            budget_num = d_budget * w_total**2
            for y in itertools.product(*ranges):
                centroid = tuple(Fraction(v, w_total) for v in y)
                if centroid in seen:
                    continue
                seen.add(centroid)
                total = 0
                for rows in full_rows:
                    best = None
                    for pt, w in rows:
                        s = 0
                        for v, yo in zip(pt, y):
                            diff = w_total * v - yo
                            s += diff * diff
                        s *= w
                        if best is None or s < best:
                            best = s
                    total += best
                    if Fraction(total) > budget_num:
                        break
                if Fraction(total) <= budget_num:
                    hit = _verified(inst, centroid, stats, tol)
                    if hit is not None:
                        return hit
    return SelectionResult(False, stats=stats)


# ---------------------------------------------------------------------------
# max distance


def select_linf(
    inst: SelectionInstance,
    centroid_cap: int = 5_000_000,
    tol: float = DEFAULT_TOL,
) -> SelectionResult:
    """Solver for the max distance: for each pivot in the first group, search
    the half-integral centroids within the budget radius per coordinate.

    The centroid grid is walked coordinate by coordinate; the greedy cost of
    the coordinates assigned so far only grows as more are fixed, so branches
    whose running total already exceeds the budget are cut.  Candidates are
    also clamped into the instance's coordinate-wise bounding box, which never
    loses an optimum.
    """
    if inst.order.kind != "linf":
        raise ValueError("solver requires the max-distance order")
    if inst.budget.exact is None or (2 * inst.budget.exact).denominator != 1:
        raise ValueError("budget must be half-integral in this regime")
    d_budget = inst.budget.exact
    d = inst.dimension
    stats = {"nodes": 0, "pivots": 0}
    flat: list[tuple[int, list[int], int]] = []
    for g, (pts, ws) in enumerate(zip(inst.groups, inst.weights)):
        for pt, w in zip(pts, ws):
            flat.append((g, [2 * v for v in pt], w))
    n_groups = inst.num_groups
    gmin2 = [min(row[1][j] for row in flat) for j in range(d)]
    gmax2 = [max(row[1][j] for row in flat) for j in range(d)]
    budget2 = int(2 * d_budget)  # totals are integer numbers of halves
    seen: set[tuple[int, ...]] = set()

    for pt1, w1 in zip(inst.groups[0], inst.weights[0]):
        stats["pivots"] += 1
        h_max = int(2 * d_budget / w1)
        base = [2 * v for v in pt1]
        value_lists = []
        feasible = True
        for j in range(d):
            lo = max(base[j] - h_max, gmin2[j])
            hi = min(base[j] + h_max, gmax2[j])
            if lo > hi:
                feasible = False
                break
            value_lists.append(sorted(range(lo, hi + 1),
                                      key=lambda v, b=base[j]: (abs(v - b), v)))
        if not feasible:
            continue

        cur_max = [0] * len(flat)
        chosen = [0] * d

        def group_total() -> int:
            best = [None] * n_groups
            for (g, _, w), m in zip(flat, cur_max):
                s = w * m
                if best[g] is None or s < best[g]:
                    best[g] = s
            return sum(best)

        def rec(j: int) -> SelectionResult | None:
            stats["nodes"] += 1
            if stats["nodes"] > centroid_cap:
                raise EnumerationCapExceeded("search node cap exceeded")
            if j == d:
                c2 = tuple(chosen)
                if c2 in seen:
                    return None
                seen.add(c2)
                centroid = tuple(Fraction(v, 2) for v in c2)
                return _verified(inst, centroid, stats, tol)
            for v in value_lists[j]:
                saved = cur_max[:]
                for idx, (_, pt2, _) in enumerate(flat):
                    gap = pt2[j] - v if pt2[j] >= v else v - pt2[j]
                    if gap > cur_max[idx]:
                        cur_max[idx] = gap
                if group_total() <= budget2:
                    chosen[j] = v
                    hit = rec(j + 1)
                    if hit is not None:
                        return hit
                cur_max[:] = saved
            return None

        hit = rec(0)
        if hit is not None:
            return hit
    return SelectionResult(False, stats=stats)


# ---------------------------------------------------------------------------
# Hamming distance


def select_l0(
    inst: SelectionInstance,
    centroid_cap: int = 5_000_000,
    tol: float = DEFAULT_TOL,
) -> SelectionResult:
    """Solver for the Hamming distance: try every centroid assembled from
    values present per coordinate anywhere in the instance."""
    if inst.order.kind != "l0":
        raise ValueError("solver requires the Hamming order")
    d = inst.dimension
    stats = {"centroids_tried": 0}
    columns = [sorted({pt[i] for _, _, pt, _ in inst.iter_vectors()}) for i in range(d)]
    size = 1
    for col in columns:
        size *= len(col)
    if size > centroid_cap:
        raise EnumerationCapExceeded("present-value grid exceeds the cap")
    budget_f = int(mpmath.floor(cost_eval(inst.budget) * (1 + 1e-30)))
    for centroid in itertools.product(*columns):
        stats["centroids_tried"] += 1
        total = 0
        for pts, ws in zip(inst.groups, inst.weights):
            best = None
            for pt, w in zip(pts, ws):
                mism = sum(1 for a, b in zip(pt, centroid) if a != b)
                s = w * mism
                if best is None or s < best:
                    best = s
            total += best
            if total > budget_f:
                break
        if total <= budget_f:
            hit = _verified(inst, centroid, stats, tol)
            if hit is not None:
                return hit
    return SelectionResult(False, stats=stats)


def solve_selection(inst: SelectionInstance, **kwargs) -> SelectionResult:
    """Dispatch to the specialized solver for the instance's distance order."""
    if inst.order.kind == "lp":
        return select_lp01(inst, **kwargs)
    if inst.order.kind == "l2":
        return select_l2(inst, **kwargs)
    if inst.order.kind == "linf":
        return select_linf(inst, **kwargs)
    return select_l0(inst, **kwargs)
