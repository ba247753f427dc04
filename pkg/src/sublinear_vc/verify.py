"""Self-check suites behind ``sublinear-vc verify``.

Each suite returns a :class:`SuiteResult`; a failing graph is shrunk by
vertex deletion while the failure persists, and reported serialized
together with its seed.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .baselines import brute_force_min_vc
from .binomial import binomial_weights
from .generators import gen_lb_family, random_multigraph
from .multigraph import MultiGraph
from .oracles import OracleContext, ReferenceOracle, derive_ranking, materialize_all, vo

LEVELS = ("quick", "full")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.cases} cases{(' ' + self.detail) if self.detail else ''}"


# -- single-case checks: return a failure message or None -------------------


def equivalence_failure(graph: MultiGraph, seed: int) -> str | None:
    """Compare lazy vo against the reference oracle on the derived ranking."""
    try:
        ctx = OracleContext(graph, max_degree=max(graph.max_degree(), 1), seed=seed, record_draws=True)
        lazy = [vo(ctx, v) for v in range(graph.n)]
        materialize_all(ctx.engine, graph)
        ref = ReferenceOracle(graph, derive_ranking(ctx.engine, graph))
    except AssertionError as exc:
        return f"internal assertion: {exc}"
    for v in range(graph.n):
        if lazy[v] != ref.vo(v):
            return f"vertex {v}: lazy={lazy[v]} reference={not lazy[v]}"
    return None


def lazy_cover_size(graph: MultiGraph, seed: int) -> int:
    ctx = OracleContext(graph, max_degree=max(graph.max_degree(), 1), seed=seed)
    return sum(vo(ctx, v) for v in range(graph.n))


def sandwich_failure(graph: MultiGraph, seed: int) -> str | None:
    opt = brute_force_min_vc(graph)
    try:
        c = lazy_cover_size(graph, seed)
    except AssertionError as exc:
        return f"internal assertion: {exc}"
    if not opt <= c <= 2 * opt:
        return f"|C|={c} outside [{opt}, {2 * opt}]"
    return None


def binomial_tv(k: int, a: int, b: int, q: int) -> Fraction:
    """Exact total variation between the sampler's output law and Binomial(k, a/b)."""
    p = Fraction(a, b)
    exact = [math.comb(k, i) * p**i * (1 - p) ** (k - i) for i in range(k + 1)]
    if a == b:
        got = [Fraction(0)] * k + [Fraction(1)]
    else:
        w = binomial_weights(k, a, b, q)
        total = sum(w)
        got = [Fraction(x, total) for x in w] + [Fraction(0)] * (k + 1 - len(w))
    return sum(abs(x - y) for x, y in zip(got, exact)) / 2


# -- shrinking ---------------------------------------------------------------


def delete_vertex(graph: MultiGraph, x: int) -> MultiGraph:
    edges = [(u - (u > x), v - (v > x)) for u, v in graph.edges() if x not in (u, v)]
    return MultiGraph.from_edges(graph.n - 1, edges)


def shrink(graph: MultiGraph, fails: Callable[[MultiGraph], bool]) -> MultiGraph:
    """Greedily delete vertices while ``fails`` keeps holding."""
    progress = True
    while progress and graph.n > 1:
        progress = False
        for x in range(graph.n):
            smaller = delete_vertex(graph, x)
            if fails(smaller):
                graph, progress = smaller, True
                break
    return graph


def counterexample(graph: MultiGraph, seed: int, check) -> str:
    g = shrink(graph, lambda h: check(h, seed) is not None)
    return f"seed={seed} ({check(g, seed)})\n{g.serialize()}"


# -- exhaustive enumeration --------------------------------------------------


def _canonical(edges, perms) -> tuple:
    return min(tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges)) for p in perms)


def multigraph_classes(n: int, m_max: int) -> list[tuple]:
    """One edge list per isomorphism class of multigraphs on n vertices with at most m_max edges.

    Loops and parallel edges included.  Classes of size k+1 are grown
    from those of size k by adding one edge and canonicalizing over all
    vertex permutations.
    """
    perms = list(itertools.permutations(range(n)))
    pairs = [(u, v) for u in range(n) for v in range(u, n)]
    level = {()}
    out = [()]
    for _ in range(m_max):
        level = {_canonical(g + (e,), perms) for g in level for e in pairs}
        out.extend(sorted(level))
    return out


def exhaustive_graphs(n_max: int = 5, m_max: int = 7):
    for n in range(1, n_max + 1):
        for edges in multigraph_classes(n, m_max):
            yield MultiGraph.from_edges(n, edges)


# -- suites ------------------------------------------------------------------


def suite_exhaustive_equivalence(seeds: int, n_max: int = 5, m_max: int = 7) -> SuiteResult:
    cases = 0
    for g in exhaustive_graphs(n_max, m_max):
        for seed in range(seeds):
            cases += 1
            if equivalence_failure(g, seed) is not None:
                return SuiteResult("exhaustive-equivalence", False, cases, counterexample(g, seed, equivalence_failure))
    return SuiteResult("exhaustive-equivalence", True, cases)


def suite_equivalence(graphs: int, seeds: int, n_max: int = 10, m_max: int = 20, rng_seed: int = 0) -> SuiteResult:
    rng = random.Random(rng_seed)
    cases = 0
    for _ in range(graphs):
        g = random_multigraph(rng, n_max, m_max)
        for seed in range(seeds):
            cases += 1
            if equivalence_failure(g, seed) is not None:
                return SuiteResult("equivalence", False, cases, counterexample(g, seed, equivalence_failure))
    return SuiteResult("equivalence", True, cases)


def suite_sandwich(graphs: int, n_max: int = 16, rng_seed: int = 1) -> SuiteResult:
    rng = random.Random(rng_seed)
    for i in range(graphs):
        g = random_multigraph(rng, n_max, 2 * n_max)
        if sandwich_failure(g, i) is not None:
            return SuiteResult("sandwich", False, i + 1, counterexample(g, i, sandwich_failure))
    return SuiteResult("sandwich", True, graphs)


def suite_binomial(k_max: int, qs=(100, 1000)) -> SuiteResult:
    cases = 0
    for k, (a, b), q in itertools.product(range(1, k_max + 1), ((1, 4), (1, 3), (1, 2), (3, 4)), qs):
        cases += 1
        tv = binomial_tv(k, a, b, q)
        if tv > Fraction(1, q):
            return SuiteResult("binomial-tv", False, cases, f"k={k} a/b={a}/{b} Q={q} tv={float(tv):.3g}")
    return SuiteResult("binomial-tv", True, cases)


def suite_lb_family(sizes=(8, 16)) -> SuiteResult:
    for n in sizes:
        got = brute_force_min_vc(gen_lb_family(n, seed=n))
        if got != n // 4 + 1:
            return SuiteResult("lb-family", False, len(sizes), f"n={n}: min VC {got} != {n // 4 + 1}")
    return SuiteResult("lb-family", True, len(sizes))


def run_suites(level: str) -> list[SuiteResult]:
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; choose from {', '.join(LEVELS)}")
    if level == "quick":
        return [suite_exhaustive_equivalence(1, 4, 5), suite_equivalence(150, 3), suite_sandwich(100),
                suite_binomial(12, (100,)), suite_lb_family()]
    return [suite_exhaustive_equivalence(20), suite_equivalence(1000, 20), suite_sandwich(500),
            suite_binomial(32), suite_lb_family()]
