"""Ground truth for small graphs: exact minimum vertex cover and greedy matching."""

from __future__ import annotations

from typing import Mapping, Sequence

MAX_BRUTE_FORCE_VERTICES = 24


class BaselineInputError(ValueError):
    pass


def _neighbor_masks(graph) -> tuple[list[int], int]:
    n = graph.n
    masks = [0] * n
    forced = 0
    for u, v in graph.edges():
        if u == v:
            forced |= 1 << u
        else:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
    return masks, forced


def brute_force_min_vc(graph) -> int:
    """Exact minimum vertex cover size by branch and bound (n <= 24).

    A self-loop forces its vertex into the cover; parallel edges count once.
    Branches on the highest-degree remaining vertex: take it, or take all
    of its remaining neighbors.
    """
    n = graph.n
    if n > MAX_BRUTE_FORCE_VERTICES:
        raise BaselineInputError(f"brute force refuses n={n} > {MAX_BRUTE_FORCE_VERTICES}")
    masks, forced = _neighbor_masks(graph)
    alive = ((1 << n) - 1) & ~forced
    base = bin(forced).count("1")
    best = [n]

    def lower_bound(alive: int) -> int:
        # Greedy matching on the remaining graph bounds the cover from below.
        lb, free = 0, alive
        while free:
            v = (free & -free).bit_length() - 1
            free &= ~(1 << v)
            nb = masks[v] & free
            if nb:
                w = (nb & -nb).bit_length() - 1
                free &= ~(1 << w)
                lb += 1
        return lb

    def solve(alive: int, size: int) -> None:
        if size + lower_bound(alive) >= best[0]:
            return
        pick, pick_deg = -1, 0
        rest = alive
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= ~(1 << v)
            d = bin(masks[v] & alive).count("1")
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            best[0] = size
            return
        solve(alive & ~(1 << pick), size + 1)
        nb = masks[pick] & alive
        solve(alive & ~nb & ~(1 << pick), size + bin(nb).count("1"))

    solve(alive, 0)
    return base + best[0]


def greedy_matching(graph, pi: Mapping | Sequence) -> tuple[int, int]:
    """(|M|, |C|) for the greedy maximal matching taking edges by ascending ``pi``."""
    m = graph.m
    ranks = [pi[e] for e in range(m)]
    if sorted(ranks) != list(range(1, m + 1)):
        raise BaselineInputError("pi must be a bijection from edge ids onto 1..m")
    order = sorted(range(m), key=ranks.__getitem__)
    covered = bytearray(graph.n)
    matched = 0
    cover = 0
    for e in order:
        u, v = graph.edge(e)
        if covered[u] or covered[v]:
            continue
        covered[u] = covered[v] = 1
        matched += 1
        cover += 1 if u == v else 2
    return matched, cover


def greedy_cover_size(graph, rng) -> int:
    """|C^pi| for a uniformly random ranking drawn from ``rng``."""
    order = list(range(graph.m))
    rng.shuffle(order)
    pi = [0] * graph.m
    for rank, e in enumerate(order, start=1):
        pi[e] = rank
    return greedy_matching(graph, pi)[1]
