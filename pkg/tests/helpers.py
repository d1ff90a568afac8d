"""Shared builders for randomized oracle sweeps."""

from __future__ import annotations

import random

from minkclust import (
    ClusteringInstance,
    Cost,
    Dataset,
    DistanceOrder,
    Graph,
    SelectionInstance,
)


def random_selection_instance(
    rnd: random.Random,
    order: DistanceOrder,
    budget: Cost,
    t_max: int = 3,
    per_group: int = 3,
    d_max: int = 3,
    coord_lo: int = 0,
    coord_hi: int = 3,
    weight_max: int = 1,
) -> SelectionInstance:
    d = rnd.randint(1, d_max)
    t = rnd.randint(1, t_max)
    pool = set()
    groups = []
    weights = []
    for _ in range(t):
        size = rnd.randint(1, per_group)
        grp = []
        ws = []
        tries = 0
        while len(grp) < size and tries < 200:
            tries += 1
            pt = tuple(rnd.randint(coord_lo, coord_hi) for _ in range(d))
            if pt in pool:
                continue
            pool.add(pt)
            grp.append(pt)
            ws.append(rnd.randint(1, weight_max))
        if not grp:  # coordinate space exhausted; force a fresh dimension value
            return random_selection_instance(
                rnd, order, budget, t_max, per_group, d_max, coord_lo, coord_hi, weight_max
            )
        groups.append(grp)
        weights.append(ws)
    return SelectionInstance.of(groups, budget, order, weights)


def random_clustering_instance(
    rnd: random.Random,
    order: DistanceOrder,
    budget: Cost,
    max_initial: int = 6,
    d_max: int = 3,
    coord_lo: int = 0,
    coord_hi: int = 3,
    k_max: int = 4,
) -> ClusteringInstance:
    d = rnd.randint(1, d_max)
    n_pts = rnd.randint(2, max_initial)
    pts = []
    seen = set()
    tries = 0
    while len(pts) < n_pts and tries < 300:
        tries += 1
        pt = tuple(rnd.randint(coord_lo, coord_hi) for _ in range(d))
        if pt in seen:
            continue
        seen.add(pt)
        pts.append(pt)
    mults = tuple(rnd.randint(1, 2) for _ in pts)
    k = rnd.randint(1, min(k_max, len(pts)))
    ds = Dataset(d, tuple(pts), mults)
    return ClusteringInstance(ds, k, budget, order)


def random_colored_graph(rnd: random.Random, n_max: int = 7, k: int = 3,
                         edge_p: float = 0.5) -> Graph:
    n = rnd.randint(k, n_max)
    colors = [rnd.randint(1, k) for _ in range(n)]
    for c in range(1, k + 1):
        if c not in colors:
            colors[rnd.randrange(n)] = c
    while len(set(colors)) < k:
        colors = [rnd.randint(1, k) for _ in range(n)]
        for c in range(1, k + 1):
            if c not in colors:
                colors[rnd.randrange(n)] = c
    edges = [
        (u, v)
        for u in range(1, n + 1)
        for v in range(u + 1, n + 1)
        if rnd.random() < edge_p
    ]
    return Graph.of(n, edges, colors)


def atlas_graphs(max_vertices: int, require_edge: bool = True) -> list[Graph]:
    """All non-isomorphic graphs with at most ``max_vertices`` vertices."""
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_nodes() > max_vertices:
            break
        if require_edge and g.number_of_edges() == 0:
            continue
        out.append(Graph.of(g.number_of_nodes(),
                            [(u + 1, v + 1) for u, v in g.edges()]))
    return out


EX_CLIQUE_GRAPH = Graph.of(4, [(1, 2), (1, 3), (1, 4), (2, 4)])
EX_CLIQUE_COLORED = Graph.of(4, [(1, 2), (1, 3), (1, 4), (2, 4)], colors=[1, 2, 2, 3])
EX_LINF_GRAPH = Graph.of(5, [(1, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
EX_LINF_COLORED = Graph.of(5, [(1, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
                            colors=[1, 2, 2, 3, 3])
EX_OCT_GRAPH = Graph.of(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])
