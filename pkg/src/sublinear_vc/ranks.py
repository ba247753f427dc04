"""Lazy, endpoint-consistent random numbers on edges.

Every edge gets a number in (0, 1], revealed level by level.  Level ``i``
covers ``(2**-i, 2**-(i-1)]`` for ``1 <= i <= d_star`` and level
``d_star + 1`` covers ``(0, 2**-d_star]``.  A vertex reveals its levels
from the smallest values upward; after ``c`` reveals its lower bound is
0 (``c == 0``) or ``2**-(d_star + 1 - c)``.

Numbers are exact fixed-point integers scaled by ``2**(64 + d_star)``:
a level plus a uniform 64-bit offset, with an edge key breaking the
(probability 2**-64) exact ties.
"""

from __future__ import annotations

import hashlib
import json
import random
import struct
from fractions import Fraction
from typing import NamedTuple

from .binomial import sample_binomial


class RankValue(NamedTuple):
    # Tuple order gives the total order: scaled value, then tiebreak.
    scaled: int
    level: int
    offset: int
    tiebreak: tuple

    def as_fraction(self, d_star: int) -> Fraction:
        return Fraction(self.scaled, 1 << (64 + d_star))

    def as_float(self, d_star: int) -> float:
        return self.scaled / (1 << (64 + d_star))


# Larger than every finite rank of any engine (d_star stays far below 400).
INFINITY = RankValue(1 << 512, 0, 0, ())


class RankStateError(RuntimeError):
    pass


def d_star_for(max_degree: int) -> int:
    """ceil(log2(d)), with d clamped to at least 1."""
    return (max(max_degree, 1) - 1).bit_length()


def scaled_value(level: int, offset: int, d_star: int) -> int:
    if level == d_star + 1:
        return offset + 1
    return (1 << (64 + d_star - level)) + ((offset + 1) << (d_star - level))


def boundary(revealed: int) -> int:
    """Scaled lower bound after ``revealed`` level reveals (independent of d_star)."""
    return 0 if revealed == 0 else 1 << (63 + revealed)


def inclusion_fraction(revealed: int, d_star: int) -> tuple[int, int]:
    """(next_lb - lb) / (1 - lb) as an integer fraction a/b."""
    if revealed == 0:
        return 1, 1 << d_star
    j = d_star + 1 - revealed
    return 1, (1 << j) - 1


def substream(seed: int, *keys: int) -> random.Random:
    """Independent deterministic generator for ``(seed, *keys)``."""
    h = hashlib.blake2b(struct.pack(f"<{len(keys) + 1}q", seed, *keys), digest_size=16)
    return random.Random(int.from_bytes(h.digest(), "little"))


class NeighborState:
    __slots__ = ("revealed", "degree", "assigned", "pending", "sorted")

    def __init__(self) -> None:
        self.revealed = 0
        self.degree: int | None = None
        # neighbor -> minimum rank of any (v, w) edge known so far
        self.assigned: dict[int, RankValue] = {}
        # level -> neighbors whose assigned rank lies on that level, not yet sorted
        self.pending: dict[int, set[int]] = {}
        self.sorted: list[tuple[int, RankValue]] = []


class RankEngine:
    """Per-vertex ``lowest`` / ``lower_bound`` / ``set_value`` over a graph.

    ``graph`` must answer ``degree(v)`` and ``neighbor(v, i)``.  The engine
    issues one degree query per vertex it advances and one neighbor
    query per tentatively selected label.
    """

    def __init__(self, graph, max_degree: int, seed: int = 0, quality: int | None = None,
                 call_budget: int = 10**6, record_draws: bool = False):
        self.graph = graph
        self.d_star = d_star_for(max_degree)
        self.seed = seed
        self.quality = quality if quality is not None else (1 << 20) * call_budget
        self.states: dict[int, NeighborState] = {}
        self.record_draws = record_draws
        # edge id -> first accepted draw (the number that edge actually received)
        self.draws: dict = {}
        self.advances = 0

    @property
    def top_level(self) -> int:
        return self.d_star + 1

    def state(self, v: int) -> NeighborState:
        st = self.states.get(v)
        if st is None:
            st = self.states[v] = NeighborState()
        return st

    # -- public data-structure operations ----------------------------------

    def lower_bound(self, v: int) -> Fraction:
        c = self.state(v).revealed
        return Fraction(0) if c == 0 else Fraction(1, 1 << (self.d_star + 1 - c))

    def set_value(self, v: int, w: int, r: RankValue) -> None:
        st = self.state(v)
        st.assigned[w] = r
        st.pending.setdefault(r.level, set()).add(w)

    def lowest(self, v: int, k: int) -> tuple[int, RankValue]:
        """k-th smallest-ranked distinct neighbor of ``v``; ``(v, INFINITY)`` past the end."""
        st = self.states.get(v) or self.state(v)
        srt = st.sorted
        top = self.d_star + 1
        while len(srt) < k and st.revealed < top:
            self._advance(v, st)
        if len(srt) >= k:
            return srt[k - 1]
        return v, INFINITY

    def materialize(self, v: int) -> None:
        st = self.state(v)
        while st.revealed < self.d_star + 1:
            self._advance(v, st)

    def sample_rank_in(self, level: int, rng: random.Random, tiebreak: tuple = ()) -> RankValue:
        if not 1 <= level <= self.d_star + 1:
            raise ValueError(f"level {level} outside [1, {self.d_star + 1}]")
        off = rng.getrandbits(64)
        return RankValue(scaled_value(level, off, self.d_star), level, off, tiebreak)

    def select_tentative(self, deg: int, revealed: int, rng: random.Random) -> list[int]:
        """Labels in 1..deg, each included independently with the level's probability."""
        if deg == 0:
            return []
        a, b = inclusion_fraction(revealed, self.d_star)
        count = sample_binomial(deg, a, b, self.quality, rng)
        if count == deg:
            return list(range(1, deg + 1))
        # Partial Fisher-Yates over 1..deg with a sparse swap map.
        swapped: dict[int, int] = {}
        out = []
        for i in range(count):
            j = rng.randrange(i, deg)
            out.append(swapped.get(j, j) + 1)
            swapped[j] = swapped.get(i, i)
        return out

    # -- level reveal -------------------------------------------------------

    def _advance(self, v: int, st: NeighborState) -> None:
        c = st.revealed
        level = self.d_star + 1 - c
        if st.degree is None:
            st.degree = self.graph.degree(v)
        rng = substream(self.seed, v, level)
        found = {w: st.assigned[w] for w in st.pending.pop(level, ())}
        assigned = st.assigned
        neighbor = self.graph.neighbor
        states = self.states
        for t in self.select_tentative(st.degree, c, rng):
            w, _, e = neighbor(v, t)
            r = self.sample_rank_in(level, rng, (min(v, w), max(v, w), t))
            ws = states.get(w)
            if ws is None:
                ws = states[w] = NeighborState()
            if ws.revealed > c:
                # w already settled this level for the edge; the draw is void.
                continue
            if self.record_draws and e not in self.draws:
                self.draws[e] = r
            prev = found.get(w)
            if prev is not None:
                if r < prev:
                    assigned[w] = r
                    if w != v:
                        self.set_value(w, v, r)
                    found[w] = r
            elif w not in assigned:
                assigned[w] = r
                if w != v:
                    self.set_value(w, v, r)
                found[w] = r
        st.sorted.extend(sorted(found.items(), key=lambda item: item[1]))
        st.revealed = c + 1
        self.advances += 1

    # -- debugging ----------------------------------------------------------

    def dump_state(self, v: int) -> str:
        st = self.state(v)
        return json.dumps({
            "vertex": v,
            "lb": str(self.lower_bound(v)),
            "revealed_levels": st.revealed,
            "assigned": {str(w): [r.level, r.offset] for w, r in sorted(st.assigned.items())},
            "sorted": [[w, r.level, r.offset] for w, r in st.sorted],
        }, sort_keys=True)
