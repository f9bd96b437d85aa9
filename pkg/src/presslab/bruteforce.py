"""Exhaustive reference computations over represented points.

Nothing here uses word arrays or cylinder windows: points are built from
``itertools.product`` enumerations, closeness is decided shift by shift from
the definition of the Bowen distance and the separated-set optimum is solved
on the conflict graph.  These serve
as the independent side of fast-path checks on small instances.
"""
from __future__ import annotations

import itertools
import math
from collections import deque

import numpy as np
from scipy.sparse.csgraph import connected_components

from .potential import Potential, birkhoff_sum
from .symbolic import (
    CylinderSet,
    PointRepr,
    ShiftSpace,
    contains_point,
)

NODE_LIMIT = 40


def admissible_words(space: ShiftSpace, length: int) -> list:
    return [w for w in itertools.product(range(space.alphabet_size), repeat=length) if space.admissible(w)]


def _bridge(space: ShiftSpace, a: int, b: int):
    """Shortest word ``u`` with ``a u b`` admissible (``None`` if unreachable)."""
    if space.adjacency[a][b]:
        return ()
    prev = {a: None}
    queue = deque([a])
    while queue:
        s = queue.popleft()
        for t in range(space.alphabet_size):
            if space.adjacency[s][t] and t not in prev:
                prev[t] = s
                if space.adjacency[t][b]:
                    path = [t]
                    while prev[path[-1]] != a:
                        path.append(prev[path[-1]])
                    return tuple(reversed(path))
                queue.append(t)
    return None


def periodic_closure(space: ShiftSpace, word, start: int = 0):
    """A periodic point that reads ``word`` on ``[start, start + len(word))``."""
    word = tuple(word)
    bridge = _bridge(space, word[-1], word[0])
    if bridge is None:
        return None
    period = word + bridge
    if space.two_sided:
        return PointRepr(period, phase=-start, two_sided=True)
    if start:
        raise ValueError("one-sided closures start at coordinate 0")
    return PointRepr(period)


def representatives(space: ShiftSpace, K: CylinderSet, lo: int, hi: int) -> list:
    """Points of ``K``, at least one in every cylinder on ``[lo, hi)`` that meets ``K``.

    Tie-breaking is lexicographic: candidates come in product order and the
    first point per cylinder is kept first in the output.
    """
    if K.tail is not None and space.two_sided:
        raise ValueError("two-sided sets with a pinned tail are not enumerated here")
    if not space.two_sided and lo != 0:
        raise ValueError("one-sided windows start at 0")
    e = K.window_end
    if K.tail is not None:
        hi = max(hi, e)
    lo = min(lo, K.window_start) if space.two_sided else 0
    hi = max(hi, K.window_end)
    found = []
    seen = set()
    for w in admissible_words(space, hi - lo):
        if K.tail is not None:
            y = PointRepr(K.tail.period, tuple(w[:e]) + K.tail.preperiod)
        else:
            y = periodic_closure(space, w, lo)
        if y is None or y in seen or not contains_point(space, K, y):
            continue
        if not _valid(space, y):
            continue
        seen.add(y)
        found.append(y)
    return found


def _valid(space: ShiftSpace, y: PointRepr) -> bool:
    return space.admissible(y.preperiod + y.period + y.period[:1])


def _conflict_components(space, points, n, q):
    """Adjacency and components of the graph joining points at ``d_n <= base**-q``.

    ``metric(T^i x, T^i y) <= base**-q`` means the first disagreement of the
    shifted points sits at distance ``>= q`` from their origin; the test is
    applied shift by shift over every pair.
    """
    m = len(points)
    two = space.two_sided
    origin = q if two else 0
    seqs = np.array([y.window(-origin, n + q) for y in points], dtype=np.int16).reshape(m, -1)
    adj = np.ones((m, m), dtype=bool)
    for i in range(n):
        c = origin + i
        lo = c - (q - 1) if two else c
        block = seqs[:, lo:c + q]
        adj &= (block[:, None, :] == block[None, :, :]).all(axis=2)
    np.fill_diagonal(adj, False)
    _, labels = connected_components(adj, directed=False)
    comps = [sorted(np.flatnonzero(labels == c).tolist()) for c in range(labels.max() + 1)] if m else []
    comps.sort()
    return adj, comps


def _best_independent(adj, nodes, weight):
    """Maximum-weight independent subset of ``nodes`` (exhaustive for small components)."""
    if all(adj[a, b] for a, b in itertools.combinations(nodes, 2)):
        best = max(nodes, key=lambda v: (weight[v], -v))
        return [best]
    if len(nodes) > NODE_LIMIT:
        raise ValueError("conflict component too large for exact search")
    best_set, best_val = [], -math.inf

    def grow(chosen, rest, val):
        nonlocal best_set, best_val
        if val > best_val:
            best_set, best_val = list(chosen), val
        for idx, v in enumerate(rest):
            if all(not adj[v, c] for c in chosen):
                grow(chosen + [v], rest[idx + 1:], val + weight[v])

    grow([], list(nodes), 0.0)
    return best_set


def brute_separated(space: ShiftSpace, f: Potential | None, K: CylinderSet, n: int, q: int) -> tuple:
    """``(max separated cardinality, log max sum exp f_n)`` by exhaustive search.

    Representatives are taken on a window deep enough that every separation
    class of ``K`` contains one.
    """
    if K.is_empty:
        from .pressure import EMPTY
        return 0, EMPTY
    depth = f.depth if f is not None else 1
    lo = -(q - 1) if space.two_sided and q else 0
    hi = max(n + q - 1, n + depth - 1)
    points = representatives(space, K, lo, hi)
    adj, comps = _conflict_components(space, points, n, q)
    ones = [1.0] * len(points)
    count = sum(len(_best_independent(adj, c, ones)) for c in comps)
    if f is None:
        return count, None
    sums = [birkhoff_sum(f, y, n) for y in points]
    total = 0.0
    top = max(sums)
    for c in comps:
        weights = [math.exp(s - top) for s in sums]
        total += sum(weights[v] for v in _best_independent(adj, c, weights))
    return count, math.log(total) + top


def brute_spanning(space: ShiftSpace, K: CylinderSet, n: int, q: int) -> int:
    """Smallest ``(n, base**-q)``-spanning subset of ``K`` among the representatives."""
    if K.is_empty:
        return 0
    lo = -(q - 1) if space.two_sided and q else 0
    points = representatives(space, K, lo, max(n + q - 1, 1))
    adj, comps = _conflict_components(space, points, n, q)
    return sum(_min_dominating(adj, c) for c in comps)


def _min_dominating(adj, nodes) -> int:
    """Fewest nodes of a component whose closed neighbourhoods cover it."""
    if all(adj[a, b] for a, b in itertools.combinations(nodes, 2)):
        return 1
    if len(nodes) > NODE_LIMIT // 2:
        raise ValueError("conflict component too large for exact search")
    for size in range(1, len(nodes) + 1):
        for F in itertools.combinations(nodes, size):
            if all(v in F or any(adj[v, c] for c in F) for v in nodes):
                return size
    return len(nodes)


def preimage_points(space: ShiftSpace, x: PointRepr, n: int) -> list:
    """All one-sided points ``y`` with ``T^n y = x``, by enumerating prefixes."""
    if space.two_sided:
        raise ValueError("one-sided spaces only")
    out = []
    for u in itertools.product(range(space.alphabet_size), repeat=n):
        y = PointRepr(x.period, tuple(u) + x.preperiod)
        if _valid(space, y) and y.shift(n) == x:
            out.append(y)
    return out
