"""Vertex-cover and maximal-matching oracles.

Two families:

* reference oracles over an explicit edge ranking ``pi`` (edge id -> rank),
  which recurse on edges sharing an endpoint in ascending rank order;
* lazy oracles over a :class:`~sublinear_vc.ranks.RankEngine`, which merge
  the ``lowest`` lists of both endpoints of an edge.

Both evaluate with explicit work stacks so that long descending-rank
chains do not hit the interpreter's recursion limit.
"""

from __future__ import annotations

import operator
from typing import Mapping, Sequence

from .ranks import INFINITY, RankEngine, RankStateError


class OracleInputError(ValueError):
    pass


# -- reference oracles over an explicit ranking --------------------------------


class ReferenceOracle:
    """Greedy-matching oracles driven by an explicit full ranking of edge ids."""

    def __init__(self, graph, pi: Mapping | Sequence):
        self.graph = graph
        m = graph.m
        ranks = [pi[e] for e in range(m)]
        if sorted(ranks) != list(range(1, m + 1)):
            raise OracleInputError("pi must be a bijection from edge ids onto 1..m")
        self.pi = ranks
        incident: list[list[int]] = [[] for _ in range(graph.n)]
        for e, (u, v) in enumerate(graph.edges()):
            incident[u].append(e)
            if v != u:
                incident[v].append(e)
        for lst in incident:
            lst.sort(key=ranks.__getitem__)
        self.incident = incident
        self.memo: dict[int, bool] = {}

    def _adjacent_below(self, e: int) -> list[int]:
        u, v = self.graph.edge(e)
        mine = self.pi[e]
        both = set(self.incident[u]) | set(self.incident[v])
        both.discard(e)
        return sorted((f for f in both if self.pi[f] < mine), key=self.pi.__getitem__)

    def mo(self, e: int) -> bool:
        if not 0 <= e < self.graph.m:
            raise OracleInputError(f"unknown edge id {e}")
        memo = self.memo
        if e in memo:
            return memo[e]
        stack = [[e, self._adjacent_below(e), 0]]
        result = None
        while stack:
            frame = stack[-1]
            edge, below, i = frame
            if result is not None:
                if result:
                    memo[edge] = False
                    stack.pop()
                    result = False
                    continue
                i += 1
                result = None
            while i < len(below) and below[i] in memo:
                if memo[below[i]]:
                    break
                i += 1
            frame[2] = i
            if i < len(below) and below[i] in memo:
                memo[edge] = False
                stack.pop()
                result = False
                continue
            if i == len(below):
                memo[edge] = True
                stack.pop()
                result = True
                continue
            child = below[i]
            stack.append([child, self._adjacent_below(child), 0])
            result = None
        return memo[e]

    def vo(self, v: int) -> bool:
        return any(self.mo(e) for e in self.incident[v])

    def cover_size(self) -> int:
        return sum(self.vo(v) for v in range(self.graph.n))


def mo_ref(graph, pi, e: int) -> bool:
    return ReferenceOracle(graph, pi).mo(e)


def vo_ref(graph, pi, v: int) -> bool:
    return ReferenceOracle(graph, pi).vo(v)


# -- lazy oracles -------------------------------------------------------------


class OracleContext:
    """Shared state of one estimation run: rank engine, matching memo, counters."""

    def __init__(self, graph, engine: RankEngine | None = None, *, max_degree: int | None = None,
                 seed: int = 0, call_budget: int = 10**6, record_draws: bool = False,
                 check_descent: bool = True):
        self.graph = graph
        if engine is None:
            d = max_degree if max_degree is not None else graph.max_degree()
            engine = RankEngine(graph, d, seed=seed, call_budget=call_budget, record_draws=record_draws)
        self.engine = engine
        self.memo: dict[tuple[int, int], bool] = {}
        self.check_descent = check_descent
        self.memo_misses = 0  # recursive-call count t (distinct evaluations)
        self.probes = 0
        self.n_total = 0
        self.n_max = 0
        self.last_n = 0
        self._probe_pairs: set | None = None

    @property
    def n_mean(self) -> float:
        return self.n_total / self.probes if self.probes else 0.0

    def matched_pairs(self) -> list[tuple[int, int]]:
        return [p for p, ans in self.memo.items() if ans]


# Rank order used by the merge; a module attribute so mutation tests can swap it.
precedes = operator.lt


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


class _Frame:
    __slots__ = ("u", "v", "key", "target", "k1", "w1", "r1", "k2", "w2", "r2", "side")

    def __init__(self, ctx: OracleContext, u: int, v: int, key):
        low = ctx.engine.lowest
        self.u, self.v, self.key = u, v, key
        self.k1, self.k2 = 1, 1
        self.w1, self.r1 = low(u, 1)
        if u == v:
            self.w2, self.r2 = v, INFINITY
        else:
            self.w2, self.r2 = low(v, 1)
        self.target = ctx.engine.state(u).assigned.get(v)
        if self.target is None:
            raise OracleInputError(f"pair {key} has no rank yet; reach it through lowest() first")
        self.side = 0


def mo(ctx: OracleContext, u: int, v: int) -> bool:
    """Is the (lowest-ranked) edge between u and v in the greedy matching?"""
    key = _key(u, v)
    if ctx._probe_pairs is not None:
        ctx._probe_pairs.add(key)
    memo = ctx.memo
    if key in memo:
        return memo[key]
    low = ctx.engine.lowest
    probe = ctx._probe_pairs
    check = ctx.check_descent
    before = precedes
    stack = [_Frame(ctx, u, v, key)]
    ctx.memo_misses += 1
    result = None
    while stack:
        f = stack[-1]
        if result is not None:
            if result:
                memo[f.key] = False
                stack.pop()
                result = False
                continue
            if f.side == 1:
                f.k1 += 1
                f.w1, f.r1 = low(f.u, f.k1)
            else:
                f.k2 += 1
                f.w2, f.r2 = low(f.v, f.k2)
            result = None
        # Merge both endpoint lists in rank order until each reaches (u, v).
        while True:
            if f.u == f.v:
                if f.w1 == f.u:
                    answer = True
                    break
                a, b, side = f.u, f.w1, 1
                r = f.r1
            else:
                if f.w1 == f.v and f.w2 == f.u:
                    answer = True
                    break
                if before(f.r1, f.r2):
                    a, b, side = f.u, f.w1, 1
                    r = f.r1
                else:
                    a, b, side = f.v, f.w2, 2
                    r = f.r2
            if check and not r < f.target:
                raise AssertionError(f"rank descent violated at {f.key} -> {(a, b)}")
            ck = _key(a, b)
            if probe is not None:
                probe.add(ck)
            hit = memo.get(ck)
            if hit is None:
                answer = None
                break
            if hit:
                answer = False
                break
            if side == 1:
                f.k1 += 1
                f.w1, f.r1 = low(f.u, f.k1)
            else:
                f.k2 += 1
                f.w2, f.r2 = low(f.v, f.k2)
        if answer is None:
            f.side = side
            stack.append(_Frame(ctx, a, b, ck))
            ctx.memo_misses += 1
            continue
        memo[f.key] = answer
        stack.pop()
        result = answer
    return memo[key]


def vo_partner(ctx: OracleContext, v: int) -> int | None:
    """The vertex ``v`` is matched to (``v`` itself for a loop), or ``None``."""
    pairs: set = set()
    ctx._probe_pairs = pairs
    try:
        low = ctx.engine.lowest
        i = 1
        while True:
            w, r = low(v, i)
            if r is INFINITY:
                partner = None
                break
            if mo(ctx, v, w):
                partner = w
                break
            i += 1
    finally:
        ctx._probe_pairs = None
    n = len(pairs)
    ctx.last_n = n
    ctx.n_total += n
    ctx.probes += 1
    if n > ctx.n_max:
        ctx.n_max = n
    return partner


def vo(ctx: OracleContext, v: int) -> bool:
    """Is ``v`` an endpoint of the greedy matching induced by the lazy ranks?"""
    return vo_partner(ctx, v) is not None


def derive_ranking(engine: RankEngine, graph) -> dict:
    """Explicit ranking (edge id -> 1..m) consistent with a fully revealed engine.

    Needs ``record_draws=True`` and every vertex advanced to lower bound 1.
    """
    if not engine.record_draws:
        raise RankStateError("engine was created without record_draws")
    top = engine.d_star + 1
    for v in range(graph.n):
        st = engine.states.get(v)
        if graph.raw_degree(v) and (st is None or st.revealed < top):
            raise RankStateError(f"vertex {v} is not fully materialized")
    draws = engine.draws
    if len(draws) != graph.m:
        raise RankStateError(f"{graph.m - len(draws)} edges never received a number")
    # The group minimum per vertex pair must be what lowest() reports.
    group_min: dict[tuple[int, int], object] = {}
    for e, r in draws.items():
        k = _key(*graph.edge(e))
        if k not in group_min or r < group_min[k]:
            group_min[k] = r
    for (a, b), r in group_min.items():
        if engine.states[a].assigned.get(b) != r:
            raise RankStateError(f"group minimum mismatch on pair {(a, b)}")
    order = sorted(draws, key=draws.__getitem__)
    return {e: i for i, e in enumerate(order, start=1)}


def materialize_all(engine: RankEngine, graph) -> None:
    for v in range(graph.n):
        engine.materialize(v)
