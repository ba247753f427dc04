"""Explicit materialization of transformed graphs, built straight from the
written construction and sharing nothing with the wrappers but the input."""

from __future__ import annotations

import math
from fractions import Fraction

from sublinear_vc.multigraph import MultiGraph


def exact(x):
    return Fraction(str(x))


def explicit(adjacency_with_keys):
    """MultiGraph from per-vertex lists of (neighbor, hashable edge key)."""
    ids: dict = {}
    adj = [[(w, ids.setdefault(k, len(ids))) for w, k in slots] for slots in adjacency_with_keys]
    return MultiGraph.from_adjacency(adj), ids


def materialize_max_deg(g, d, eps):
    n, f, loops = g.n, math.floor(exact(eps) * d), 8 * d
    adj = [[] for _ in range(2 * n)]
    for v in range(n):
        adj[v] = [(w, ("e", e)) for w, _, e in g.slots(v)] + [(v + n, ("s", v, k)) for k in range(f)]
        adj[v + n] = [(v, ("s", v, k)) for k in range(f)] + [(v + n, ("l", v, k)) for k in range(loops)]
    return explicit(adj)


def materialize_avg_deg(g, dbar, eps):
    n = g.n
    tau = 8 * exact(dbar) / exact(eps)
    grp = math.ceil(exact(dbar))
    loops = math.ceil(32 * exact(dbar) / exact(eps))
    groups = max(1, math.ceil(math.floor(tau) / grp))
    high = [g.raw_degree(v) > tau for v in range(n)]
    adj = [[] for _ in range(2 * n + n * groups)]
    for v in range(n):
        if high[v]:
            continue
        deg = g.raw_degree(v)
        slots = g.slots(v)
        real = []
        for t, (w, _, e) in enumerate(slots, start=1):
            if high[w]:
                real.append((2 * n + v * groups + (t - 1) // grp, ("g", v, t)))
            else:
                real.append((w, ("e", e)))
        adj[v] = real + [(n + v, ("s", v, k)) for k in range(grp)]
        adj[n + v] = [(v, ("s", v, k)) for k in range(grp)] + [(n + v, ("l", n + v, k)) for k in range(loops)]
        for i in range(1, math.ceil(deg / grp) + 1):
            x = 2 * n + v * groups + i - 1
            lst = []
            for j in range(1, grp + 1):
                t = (i - 1) * grp + j
                if t <= deg and high[slots[t - 1][0]]:
                    lst.append((v, ("g", v, t)))
                else:
                    lst.append((x, ("l", x, j)))
            adj[x] = lst + [(x, ("l", x, grp + 1 + k)) for k in range(loops)]
    return explicit(adj)


def materialize_dense(g, eps):
    n = g.n
    loops = math.ceil(8 / exact(eps)) * n
    present = {(min(u, v), max(u, v)) for u, v in g.edges()}
    adj = [[] for _ in range(2 * n)]
    for v in range(n):
        for w in range(n):
            if (min(v, w), max(v, w)) in present:
                adj[v].append((w, ("e", min(v, w), max(v, w))))
                adj[v + n].append((v + n, ("l", v + n, w)))
            else:
                adj[v].append((v + n, ("s", v, w)))
                adj[v + n].append((v, ("s", v, w)))
        adj[v + n] += [(v + n, ("l", v + n, n + k)) for k in range(loops)]
    return explicit(adj)


def slot_diff(virtual, reference):
    """Slots where the wrapper disagrees with the explicit graph (empty if faithful)."""
    diffs = []
    wrapper_to_ref: dict = {}
    assert virtual.n == reference.n
    for x in range(virtual.n):
        deg = virtual.degree(x)
        if deg != reference.raw_degree(x):
            diffs.append((x, "degree", deg, reference.raw_degree(x)))
            continue
        for i, (w, j, e) in enumerate(reference.slots(x), start=1):
            vw, vj, ve = virtual.neighbor(x, i)
            if (vw, vj) != (w, j) or wrapper_to_ref.setdefault(ve, e) != e:
                diffs.append((x, i, (vw, vj, ve), (w, j, e)))
    if len(set(wrapper_to_ref.values())) != len(wrapper_to_ref):
        diffs.append(("edge ids not one-to-one",))
    return diffs
