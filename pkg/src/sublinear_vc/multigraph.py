"""Multigraph storage with counted degree/neighbor/pair queries.

Adjacency is stored in CSR form: every vertex owns a contiguous run of
slots, and each slot records ``(other endpoint, reciprocal slot, edge id)``.
A self-loop occupies a single slot whose reciprocal is itself.  Slot
indices exposed through :meth:`MultiGraph.neighbor` are 1-based.
"""

from __future__ import annotations

import copy
from array import array
from dataclasses import dataclass, asdict
from typing import Iterable, Iterator, TextIO

import numpy as np


class GraphInputError(ValueError):
    """Out-of-range vertex or slot, or malformed construction input."""


class GraphParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class GraphStateError(RuntimeError):
    """The graph lacks an index the caller needs (e.g. pair queries)."""


@dataclass
class QueryStats:
    degree_queries: int = 0
    neighbor_queries: int = 0
    pair_queries: int = 0

    @property
    def total(self) -> int:
        return self.degree_queries + self.neighbor_queries + self.pair_queries

    def reset(self) -> None:
        self.degree_queries = 0
        self.neighbor_queries = 0
        self.pair_queries = 0

    def snapshot(self) -> "QueryStats":
        return QueryStats(self.degree_queries, self.neighbor_queries, self.pair_queries)

    def __sub__(self, other: "QueryStats") -> "QueryStats":
        return QueryStats(
            self.degree_queries - other.degree_queries,
            self.neighbor_queries - other.neighbor_queries,
            self.pair_queries - other.pair_queries,
        )

    def as_dict(self) -> dict:
        return asdict(self)


class MultiGraph:
    """Immutable undirected multigraph answering counted queries.

    Build with :meth:`from_edges` (slots appended in edge order) or
    :meth:`from_adjacency` (explicit per-vertex slot order).  Query
    counters live in ``self.stats``; use :meth:`view` to get a handle that
    shares storage but counts into fresh stats.
    """

    def __init__(self, n, offsets, other, recip, eid, edges, pair_index=None):
        self.n = n
        self._offsets = offsets
        self._other = other
        self._recip = recip
        self._eid = eid
        self._edges = edges  # flat array: u0, v0, u1, v1, ...
        self._pairs = pair_index
        self.stats = QueryStats()

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], pair_index: bool = False) -> "MultiGraph":
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if n < 0:
            raise GraphInputError("vertex count must be non-negative")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphInputError("edge endpoint out of range")
        m = len(arr)
        u, v = arr[:, 0], arr[:, 1]
        loop = u == v
        # One slot per endpoint for ordinary edges, one slot for a loop.
        # Order of slot creation: edge by edge, u side then v side.
        ids = np.arange(m, dtype=np.int64)
        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        eid = np.empty(2 * m, dtype=np.int64)
        src[0::2], src[1::2] = u, v
        dst[0::2], dst[1::2] = v, u
        eid[0::2], eid[1::2] = ids, ids
        keep = np.ones(2 * m, dtype=bool)
        keep[1::2] = ~loop
        src, dst, eid = src[keep], dst[keep], eid[keep]
        return cls._from_slot_stream(n, src, dst, eid, arr, pair_index)

    @classmethod
    def from_adjacency(cls, adjacency: list[list[tuple[int, int]]], pair_index: bool = False) -> "MultiGraph":
        """Build from explicit slot lists ``adjacency[v] = [(w, edge_id), ...]``.

        Each non-loop edge id must appear once in each endpoint's list and a
        loop id exactly once.
        """
        n = len(adjacency)
        seen: dict[int, list[tuple[int, int]]] = {}
        for v, slots in enumerate(adjacency):
            for w, e in slots:
                if not 0 <= w < n:
                    raise GraphInputError(f"endpoint {w} out of range")
                seen.setdefault(e, []).append((v, w))
        m = len(seen)
        if sorted(seen) != list(range(m)):
            raise GraphInputError("edge ids must be dense in [0, m)")
        edges = np.empty((m, 2), dtype=np.int64)
        for e, occ in seen.items():
            (v, w) = occ[0]
            want = 1 if v == w else 2
            if len(occ) != want or (want == 2 and occ[1] != (w, v)):
                raise GraphInputError(f"edge {e} has inconsistent slots")
            edges[e] = (min(v, w), max(v, w))
        src = np.array([v for v, slots in enumerate(adjacency) for _ in slots], dtype=np.int64)
        dst = np.array([w for slots in adjacency for w, _ in slots], dtype=np.int64)
        eid = np.array([e for slots in adjacency for _, e in slots], dtype=np.int64)
        return cls._from_slot_stream(n, src, dst, eid, edges, pair_index)

    @classmethod
    def _from_slot_stream(cls, n, src, dst, eid, edges, pair_index):
        # Stable sort by source keeps per-vertex slot order = stream order.
        order = np.argsort(src, kind="stable")
        src, dst, eid = src[order], dst[order], eid[order]
        counts = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        total = len(src)
        slot_no = np.arange(total, dtype=np.int64) - offsets[src] + 1 if total else np.zeros(0, dtype=np.int64)
        # Reciprocal: the other slot carrying the same edge id (itself for loops).
        recip = slot_no.copy()
        if total:
            by_edge = np.argsort(eid, kind="stable")
            e_sorted = eid[by_edge]
            first = np.ones(total, dtype=bool)
            first[1:] = e_sorted[1:] != e_sorted[:-1]
            starts = np.flatnonzero(first)
            sizes = np.diff(np.append(starts, total))
            pairs = starts[sizes == 2]
            a, b = by_edge[pairs], by_edge[pairs + 1]
            recip[a] = slot_no[b]
            recip[b] = slot_no[a]
        pidx = None
        if pair_index:
            pidx = {int(min(x, y)) * n + int(max(x, y)) for x, y in edges}
        return cls(
            n,
            array("q", offsets.tobytes()),
            array("q", dst.tobytes()),
            array("q", recip.tobytes()),
            array("q", eid.tobytes()),
            array("q", np.asarray(edges, dtype=np.int64).reshape(-1).tobytes()),
            pidx,
        )

    def view(self) -> "MultiGraph":
        """Same storage, fresh query counters."""
        g = copy.copy(self)
        g.stats = QueryStats()
        return g

    def with_pair_index(self) -> "MultiGraph":
        if self._pairs is not None:
            return self
        g = self.view()
        n = self.n
        e = self._edges
        g._pairs = {min(e[2 * i], e[2 * i + 1]) * n + max(e[2 * i], e[2 * i + 1]) for i in range(len(e) // 2)}
        return g

    # -- queries --------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges) // 2

    @property
    def has_pair_index(self) -> bool:
        return self._pairs is not None

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphInputError(f"vertex {v} out of range [0, {self.n})")

    def degree(self, v: int) -> int:
        self._check(v)
        self.stats.degree_queries += 1
        return self._offsets[v + 1] - self._offsets[v]

    def neighbor(self, v: int, i: int) -> tuple[int, int, int]:
        """The ``i``-th slot of ``v`` (1-based): ``(w, reciprocal slot, edge id)``."""
        self._check(v)
        base = self._offsets[v]
        if not 1 <= i <= self._offsets[v + 1] - base:
            raise GraphInputError(f"slot {i} out of range for vertex {v}")
        self.stats.neighbor_queries += 1
        k = base + i - 1
        return self._other[k], self._recip[k], self._eid[k]

    def pair(self, u: int, v: int) -> bool:
        if self._pairs is None:
            raise GraphStateError("graph was built without a pair-query index")
        self._check(u)
        self._check(v)
        self.stats.pair_queries += 1
        if u > v:
            u, v = v, u
        return u * self.n + v in self._pairs

    # -- uncounted inspection (tests, baselines, serialization) ----------

    def raw_degree(self, v: int) -> int:
        return self._offsets[v + 1] - self._offsets[v]

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return int(np.diff(np.frombuffer(self._offsets, dtype=np.int64)).max())

    def slots(self, v: int) -> list[tuple[int, int, int]]:
        a, b = self._offsets[v], self._offsets[v + 1]
        return [(self._other[k], self._recip[k], self._eid[k]) for k in range(a, b)]

    def edge(self, e: int) -> tuple[int, int]:
        if not 0 <= e < self.m:
            raise GraphInputError(f"edge id {e} out of range")
        return self._edges[2 * e], self._edges[2 * e + 1]

    def edges(self) -> Iterator[tuple[int, int]]:
        e = self._edges
        for i in range(len(e) // 2):
            yield e[2 * i], e[2 * i + 1]

    def serialize(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


def parse_graph(stream: TextIO | str, pair_index: bool = False) -> MultiGraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed)."""
    text = stream if isinstance(stream, str) else stream.read()
    lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphParseError(1, "missing header 'n m'")

    def ints(no: int, ln: str) -> tuple[int, int]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphParseError(no, f"expected two integers, got {ln!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(no, f"non-integer token in {ln!r}") from None
        return a, b

    hno, header = lines[0]
    n, m = ints(hno, header)
    if n < 0 or m < 0:
        raise GraphParseError(hno, "negative header value")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else hno + 1)
        raise GraphParseError(where, f"header declares {m} edges, found {len(body)}")
    edges = []
    for no, ln in body:
        u, v = ints(no, ln)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(no, f"vertex out of range [0, {n})")
        edges.append((u, v))
    return MultiGraph.from_edges(n, edges, pair_index=pair_index)


def load_graph(path: str, pair_index: bool = False) -> MultiGraph:
    with open(path) as fh:
        return parse_graph(fh, pair_index=pair_index)
