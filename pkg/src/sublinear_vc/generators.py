"""Synthetic graph families, addressable by a compact spec string.

``"regular:n=1000,d=10,seed=7"`` -> :func:`generate` -> :class:`MultiGraph`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .multigraph import MultiGraph

FAMILIES = ("regular", "gnp", "star", "path", "cycle", "complete",
            "complete-bipartite", "matching", "empty", "lb-family")


class GeneratorInputError(ValueError):
    pass


@dataclass
class GenSpec:
    family: str
    n: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        family, _, rest = text.partition(":")
        family = family.strip()
        if family not in FAMILIES:
            raise GeneratorInputError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
        params: dict = {}
        for item in filter(None, (p.strip() for p in rest.split(","))):
            key, eq, val = item.partition("=")
            if not eq:
                raise GeneratorInputError(f"expected key=value, got {item!r}")
            params[key.strip()] = _number(val.strip())
        if "n" not in params:
            raise GeneratorInputError("spec needs n=<vertices>")
        n = int(params.pop("n"))
        seed = int(params.pop("seed", 0))
        return cls(family, n, params, seed)

    def __str__(self) -> str:
        extra = "".join(f",{k}={v}" for k, v in self.params.items())
        return f"{self.family}:n={self.n}{extra},seed={self.seed}"


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise GeneratorInputError(f"not a number: {text!r}") from None


def gen_regular(n: int, d: int, seed: int = 0, simple: bool = False) -> MultiGraph:
    """d-regular multigraph by the configuration model.

    Stubs are paired uniformly and loops/parallel edges are kept; a loop
    uses two stubs but occupies one adjacency slot.  ``simple=True``
    returns a uniformly random simple d-regular graph instead.
    """
    if n < 0 or d < 0 or (n * d) % 2:
        raise GeneratorInputError("need n, d >= 0 with n*d even")
    if simple:
        if d >= n and n > 0:
            raise GeneratorInputError("simple d-regular graph needs d < n")
        g = nx.random_regular_graph(d, n, seed=seed)
        return MultiGraph.from_edges(n, np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2))
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    rng.shuffle(stubs)
    return MultiGraph.from_edges(n, stubs.reshape(-1, 2))


def stub_degrees(graph: MultiGraph) -> list[int]:
    """Degrees counting a loop twice (the configuration-model convention)."""
    deg = [0] * graph.n
    for u, v in graph.edges():
        deg[u] += 1
        deg[v] += 1
    return deg


def gen_gnp(n: int, p: float, seed: int = 0, pair_index: bool = False) -> MultiGraph:
    if not 0 <= p <= 1:
        raise GeneratorInputError("p must lie in [0, 1]")
    if n <= 4000:
        rng = np.random.default_rng(seed)
        iu, ju = np.triu_indices(n, k=1)
        keep = rng.random(len(iu)) < p
        edges = np.stack([iu[keep], ju[keep]], axis=1)
    else:
        g = nx.fast_gnp_random_graph(n, p, seed=seed)
        edges = np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2)
    return MultiGraph.from_edges(n, edges, pair_index=pair_index)


def gen_lb_family(n: int, seed: int = 0) -> MultiGraph:
    """K_{n/4, 3n/4} with edges (uL,uR), (vL,vR) swapped for (uL,vL), (uR,vR).

    Each adjacency list is shuffled independently.  Minimum vertex cover
    is n/4 + 1.
    """
    if n < 8 or n % 4:
        raise GeneratorInputError("lb-family needs n >= 8 and n divisible by 4")
    rng = random.Random(seed)
    q = n // 4
    u_l, v_l = rng.sample(range(q), 2)
    u_r, v_r = rng.sample(range(q, n), 2)
    removed = {(u_l, u_r), (v_l, v_r)}
    edges = [(a, b) for a in range(q) for b in range(q, n) if (a, b) not in removed]
    edges += [(min(u_l, v_l), max(u_l, v_l)), (min(u_r, v_r), max(u_r, v_r))]
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        adjacency[a].append((b, e))
        adjacency[b].append((a, e))
    for slots in adjacency:
        rng.shuffle(slots)
    return MultiGraph.from_adjacency(adjacency)


def random_multigraph(rng: random.Random, n_max: int, m_max: int, loops: bool = True) -> MultiGraph:
    """Small random multigraph: n in [1, n_max], m in [0, m_max], endpoints uniform.

    Parallel edges arise naturally; self-loops too unless ``loops=False``.
    """
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v and not loops:
            if n == 1:
                break
            continue
        edges.append((u, v))
    return MultiGraph.from_edges(n, edges)


def gen_named(family: str, params: dict | None = None, seed: int = 0, pair_index: bool = False) -> MultiGraph:
    params = dict(params or {})
    n = int(params.pop("n", 0))
    if family == "regular":
        return gen_regular(n, int(params["d"]), seed, simple=bool(params.get("simple", 0)))
    if family == "gnp":
        return gen_gnp(n, float(params["p"]), seed, pair_index=pair_index)
    if family == "lb-family":
        return gen_lb_family(n, seed)
    if family == "star":
        edges = [(0, i) for i in range(1, n)]
    elif family == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "cycle":
        if n < 3:
            raise GeneratorInputError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif family == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif family == "complete-bipartite":
        a = int(params.get("a", n // 2))
        if not 0 <= a <= n:
            raise GeneratorInputError("part size a must lie in [0, n]")
        edges = [(i, j) for i in range(a) for j in range(a, n)]
    elif family == "matching":
        if n % 2:
            raise GeneratorInputError("matching needs even n")
        edges = [(2 * i, 2 * i + 1) for i in range(n // 2)]
    elif family == "empty":
        edges = []
    else:
        raise GeneratorInputError(f"unknown family {family!r}")
    return MultiGraph.from_edges(n, edges, pair_index=pair_index)


def generate(spec: GenSpec | str, pair_index: bool = False) -> MultiGraph:
    if isinstance(spec, str):
        spec = GenSpec.parse(spec)
    g = gen_named(spec.family, {"n": spec.n, **spec.params}, spec.seed, pair_index=pair_index)
    if pair_index and not g.has_pair_index:
        g = g.with_pair_index()
    return g
