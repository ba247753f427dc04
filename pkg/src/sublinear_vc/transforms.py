"""Virtual graphs answering degree/neighbor queries on a transformed graph.

Each wrapper answers a query on the transformed graph with O(1) queries to
the underlying graph, whose counters record the real cost.  Virtual
edge ids are tuples: ``("e", id)`` for an underlying edge, ``("s", v, k)``
for the k-th parallel edge between ``v`` and its shadow, ``("g", v, t)``
for an edge rerouted from ``v``'s slot ``t`` to a group vertex and
``("l", x, slot)`` for a self-loop.

Slot order inside every vertex: underlying edges first, then edges to
shadow vertices, then loops.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .multigraph import GraphInputError, GraphStateError, QueryStats


class TransformInputError(ValueError):
    pass


def decimal(x) -> Fraction:
    """Exact value of a parameter as written: 0.3 means 3/10, not the nearest double."""
    return Fraction(repr(x)) if isinstance(x, float) else Fraction(x)


def _check_eps(eps: float) -> None:
    if not 0 < eps < 1:
        raise TransformInputError(f"eps must lie in (0, 1), got {eps}")


class VirtualGraph:
    mode = "virtual"

    def __init__(self, base, n_virtual: int, max_deg: int):
        self.base = base
        self.n_real = base.n
        self.n = n_virtual
        self._max_degree = max_deg
        self.stats = QueryStats()

    def max_degree(self) -> int:
        return self._max_degree

    def pair(self, u: int, v: int) -> bool:
        raise GraphStateError(f"{self.mode} virtual graph does not answer pair queries")

    def _check(self, x: int) -> None:
        if not 0 <= x < self.n:
            raise GraphInputError(f"virtual vertex {x} out of range [0, {self.n})")

    def _bad_slot(self, x: int, i: int):
        return GraphInputError(f"slot {i} out of range for virtual vertex {x}")

    def real_vertices(self) -> range:
        return range(self.n_real)


class MaxDegreeShadow(VirtualGraph):
    """Each v gets a shadow v' = v + n joined by floor(eps*d) parallel edges;
    v' also carries 8d self-loops."""

    mode = "max-deg"

    def __init__(self, base, d: int, eps: float):
        _check_eps(eps)
        if d < base.max_degree():
            raise TransformInputError(f"d={d} is below the graph's maximum degree {base.max_degree()}")
        if not 1 / decimal(eps) < d:
            raise TransformInputError(f"need 1/eps < d (eps={eps}, d={d})")
        self.d = d
        self.eps = eps
        self.shadow_edges = math.floor(decimal(eps) * d)
        self.loops = 8 * d
        super().__init__(base, 2 * base.n, self.shadow_edges + self.loops)

    def degree(self, x: int) -> int:
        self._check(x)
        self.stats.degree_queries += 1
        n = self.n_real
        if x < n:
            return self.base.degree(x) + self.shadow_edges
        return self.shadow_edges + self.loops

    def neighbor(self, x: int, i: int):
        self._check(x)
        self.stats.neighbor_queries += 1
        n, f = self.n_real, self.shadow_edges
        if x < n:
            d = self.base.degree(x)
            if 1 <= i <= d:
                w, j, e = self.base.neighbor(x, i)
                return w, j, ("e", e)
            if d < i <= d + f:
                return x + n, i - d, ("s", x, i - d)
            raise self._bad_slot(x, i)
        v = x - n
        if 1 <= i <= f:
            return v, self.base.degree(v) + i, ("s", v, i)
        if f < i <= f + self.loops:
            return x, i, ("l", x, i)
        raise self._bad_slot(x, i)


class AverageDegreeShadow(VirtualGraph):
    """Shadow construction for a bound on the average degree.

    Vertices of degree above ``threshold = 8*dbar/eps`` (the set L) drop
    out: they become isolated placeholders and the estimator answers them
    directly.  Every other v gets a shadow v' (``group`` parallel edges to
    v plus ``loops`` self-loops) and group vertices v''_i, one per block
    of ``group`` consecutive slots of v.  An edge from v into L is rerouted
    to the group vertex of its block; the group vertex turns the
    remaining slots of its block into self-loops and also carries
    ``loops`` self-loops.

    Layout: real v in [0, n); v' = n + v; v''_i = 2n + v*max_groups + i - 1.
    """

    mode = "avg-deg"

    def __init__(self, base, avg_degree: float, eps: float):
        _check_eps(eps)
        if avg_degree <= 0:
            raise TransformInputError("average degree bound must be positive")
        actual = Fraction(2 * base.m, base.n) if base.n else Fraction(0)
        dbar = decimal(avg_degree)
        # Tolerate float rounding in bounds such as 2m/n.
        if dbar < actual * (1 - Fraction(1, 10**12)):
            raise TransformInputError(f"avg degree bound {avg_degree} below actual {float(actual):.4g}")
        self.avg_degree = avg_degree
        self.eps = eps
        self.threshold = 8 * dbar / decimal(eps)
        self.group = math.ceil(dbar)
        self.loops = math.ceil(32 * dbar / decimal(eps))
        self.max_low_degree = math.floor(self.threshold)
        self.max_groups = max(1, math.ceil(self.max_low_degree / self.group))
        n = base.n
        super().__init__(base, 2 * n + n * self.max_groups,
                         max(self.max_low_degree + self.group, self.group + self.loops))

    def is_high(self, deg: int) -> bool:
        return deg > self.threshold

    def _locate(self, x: int) -> tuple[str, int, int]:
        n = self.n_real
        if x < n:
            return "real", x, 0
        if x < 2 * n:
            return "shadow", x - n, 0
        v, i = divmod(x - 2 * n, self.max_groups)
        return "group", v, i + 1

    def group_vertex(self, v: int, i: int) -> int:
        return 2 * self.n_real + v * self.max_groups + i - 1

    def degree(self, x: int) -> int:
        self._check(x)
        self.stats.degree_queries += 1
        kind, v, i = self._locate(x)
        d = self.base.degree(v)
        if self.is_high(d):
            return 0
        if kind == "real":
            return d + self.group
        if kind == "shadow":
            return self.group + self.loops
        return self.group + self.loops if i <= math.ceil(d / self.group) else 0

    def neighbor(self, x: int, s: int):
        self._check(x)
        self.stats.neighbor_queries += 1
        kind, v, i = self._locate(x)
        g = self.group
        d = self.base.degree(v)
        if self.is_high(d):
            raise self._bad_slot(x, s)
        if kind == "real":
            if 1 <= s <= d:
                w, j, e = self.base.neighbor(v, s)
                if self.is_high(self.base.degree(w)):
                    blk = (s - 1) // g + 1
                    return self.group_vertex(v, blk), s - (blk - 1) * g, ("g", v, s)
                return w, j, ("e", e)
            if d < s <= d + g:
                return self.n_real + v, s - d, ("s", v, s - d)
            raise self._bad_slot(x, s)
        if kind == "shadow":
            if 1 <= s <= g:
                return v, d + s, ("s", v, s)
            if g < s <= g + self.loops:
                return x, s, ("l", x, s)
            raise self._bad_slot(x, s)
        if i > math.ceil(d / g) or not 1 <= s <= g + self.loops:
            raise self._bad_slot(x, s)
        if s <= g:
            t = (i - 1) * g + s
            if t <= d:
                w, _, _ = self.base.neighbor(v, t)
                if self.is_high(self.base.degree(w)):
                    return v, t, ("g", v, t)
        return x, s, ("l", x, s)


def high_degree_shortcut(graph, avg_degree: float, eps: float, v: int) -> bool | None:
    """``True`` when deg(v) exceeds 8*avg_degree/eps, else ``None`` (probe normally)."""
    threshold = 8 * decimal(avg_degree) / decimal(eps)
    return True if graph.degree(v) > threshold else None


class DenseAdapter(VirtualGraph):
    """Neighbor access built from pair queries only.

    Real v has exactly n slots: slot j is the edge to vertex j-1 when the
    pair query says so, otherwise a parallel edge to v' = n + v.  v' has
    n mirror slots (edge to v where v has none, self-loop where it does)
    followed by ceil(8/eps)*n self-loops.
    """

    mode = "dense"

    def __init__(self, base, eps: float):
        _check_eps(eps)
        if not base.has_pair_index:
            raise GraphStateError("dense adapter needs a graph with a pair-query index")
        self.eps = eps
        n = base.n
        self.loops = math.ceil(8 / decimal(eps)) * n
        super().__init__(base, 2 * n, n + self.loops)

    def degree(self, x: int) -> int:
        self._check(x)
        self.stats.degree_queries += 1
        n = self.n_real
        return n if x < n else n + self.loops

    def neighbor(self, x: int, j: int):
        self._check(x)
        self.stats.neighbor_queries += 1
        n = self.n_real
        if x < n:
            if not 1 <= j <= n:
                raise self._bad_slot(x, j)
            w = j - 1
            if self.base.pair(x, w):
                if w == x:
                    return x, j, ("l", x, j)
                return w, x + 1, ("e", min(x, w), max(x, w))
            return x + n, j, ("s", x, j)
        v = x - n
        if 1 <= j <= n:
            if self.base.pair(v, j - 1):
                return x, j, ("l", x, j)
            return v, j, ("s", v, j)
        if n < j <= n + self.loops:
            return x, j, ("l", x, j)
        raise self._bad_slot(x, j)


def shadow_bounded_degree(graph, d: int, eps: float) -> MaxDegreeShadow:
    return MaxDegreeShadow(graph, d, eps)


def shadow_average_degree(graph, avg_degree: float, eps: float) -> AverageDegreeShadow:
    return AverageDegreeShadow(graph, avg_degree, eps)


def dense_adapter(graph, eps: float) -> DenseAdapter:
    return DenseAdapter(graph, eps)
