"""Separated-set pressure, cover pressure, cover entropy and Bowen pressure of closed sets.

All set-level quantities are computed on cylinder words: with the shift metric
two points are ``(n, base**-q)``-close exactly when they agree on a finite
coordinate window, so separation classes, cells of joined partitions and the
sup/inf of Birkhoff sums over them are all finite word computations.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .potential import Potential, birkhoff_rows, birkhoff_window, constant_potential
from .symbolic import (
    CylinderSet,
    Cover,
    ShiftSpace,
    full_set,
    materialize,
    unique_rows,
    word_array,
)


class Empty(enum.Enum):
    """Result marker for quantities taken over the empty set (``log 0``)."""

    EMPTY = "empty"

    def __float__(self):
        return -math.inf

    def __repr__(self):
        return "EMPTY"


EMPTY = Empty.EMPTY

ATOM_LIMIT = 12


def _log_total(values: np.ndarray):
    if len(values) == 0:
        return EMPTY
    return float(logsumexp(values))


def separation_window(space: ShiftSpace, n: int, q: int, backward: bool = False) -> tuple:
    """Window ``[lo, hi)`` on which two points must agree to be ``(n, base**-q)``-close."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if q < 0:
        raise ValueError("q must be non-negative")
    if q == 0:
        return 0, 0
    if not space.two_sided:
        if backward:
            raise ValueError("T^-1 is not defined on a one-sided space")
        return 0, n + q - 1
    if backward:
        return -(n + q - 2), q
    return -(q - 1), n + q - 1


def _class_extremes(space, f, K, window, n, backward=False):
    """Per-class (sup, inf) of ``f_n`` over ``K``, classes given by words on ``window``."""
    glo, ghi = window
    blo, bhi = birkhoff_window(f, n, backward)
    lo, hi = min(glo, blo), max(ghi, bhi)
    if not space.two_sided:
        lo = max(lo, 0)
    rows = materialize(space, K, lo, hi)
    vals = birkhoff_rows(f, rows, lo, n, backward)
    groups, inverse = unique_rows(rows[:, glo - lo:ghi - lo], return_inverse=True)
    sup = np.full(len(groups), -np.inf)
    inf = np.full(len(groups), np.inf)
    np.maximum.at(sup, inverse, vals)
    np.minimum.at(inf, inverse, vals)
    return groups, sup, inf


def separated_count(space: ShiftSpace, K: CylinderSet, n: int, q: int, method: str = "fast") -> int:
    """Largest cardinality of an ``(n, base**-q)``-separated subset of ``K``."""
    if method == "brute":
        from .bruteforce import brute_separated
        return brute_separated(space, None, K, n, q)[0]
    lo, hi = separation_window(space, n, q)
    return len(materialize(space, K, lo, hi))


def spanning_count(space: ShiftSpace, K: CylinderSet, n: int, q: int, method: str = "fast") -> int:
    """Smallest cardinality of an ``(n, base**-q)``-spanning set of ``K``.

    Bowen balls of an ultrametric partition the space, so this equals the
    separated count.
    """
    if method == "brute":
        from .bruteforce import brute_spanning
        return brute_spanning(space, K, n, q)
    return separated_count(space, K, n, q)


def separated_pressure(space: ShiftSpace, f: Potential, K: CylinderSet, n: int, q: int,
                       backward: bool = False, method: str = "fast"):
    """``log`` of the sup over separated sets ``E ⊆ K`` of ``sum exp f_n``.

    Returns :data:`EMPTY` when ``K`` is empty.  With ``backward=True`` the
    separation and the Birkhoff sums use ``T^-1`` (two-sided spaces).
    """
    if method == "brute":
        from .bruteforce import brute_separated
        if backward:
            raise ValueError("the brute-force path runs forward only")
        return brute_separated(space, f, K, n, q)[1]
    _, sup, _ = _class_extremes(space, f, K, separation_window(space, n, q, backward), n, backward)
    return _log_total(sup)


# ---------------------------------------------------------------------------
# covers

def _code_table(space: ShiftSpace, U: Cover, masks: bool) -> tuple:
    """``(lo, L, table)`` with ``table[code]`` describing the members holding each ``L``-word.

    Entries are member bitmasks when ``masks`` is set, otherwise the index
    of the (unique) member of a partition.
    """
    lo = min(m.window_start for m in U.members)
    hi = max(m.window_end for m in U.members)
    L = hi - lo
    k = space.alphabet_size
    if masks and len(U.members) > 62:
        raise ValueError("general covers with more than 62 members are not supported")
    table = np.zeros(k ** L, dtype=np.int64)
    for idx, m in enumerate(U.members):
        codes = _codes(materialize(space, m, lo, hi), k)
        if masks:
            table[codes] |= 1 << idx
        else:
            table[codes] = idx
    return lo, L, table


def _codes(rows: np.ndarray, k: int) -> np.ndarray:
    code = np.zeros(len(rows), dtype=np.int64)
    for j in range(rows.shape[1]):
        code = code * k + rows[:, j]
    return code


def _join_masks(space, U, K, n, f, masks=True):
    """Per-step member labels of the points of ``K`` on the join window, and ``f_n``."""
    lo_u, L, table = _code_table(space, U, masks)
    jlo, jhi = lo_u, lo_u + L + n - 1
    blo, bhi = birkhoff_window(f, n)
    lo, hi = min(jlo, blo), max(jhi, bhi)
    rows = materialize(space, K, lo, hi)
    k = space.alphabet_size
    masks = np.empty((len(rows), n), dtype=np.int64)
    for i in range(n):
        start = jlo - lo + i
        masks[:, i] = table[_codes(rows[:, start:start + L].astype(np.int64), k)]
    vals = birkhoff_rows(f, rows, lo, n)
    return masks, vals


def _cell_extremes(space, f, U, K, n):
    if not U.is_partition:
        raise ValueError("cover must be a partition; use cover_pressure_exact for general covers")
    if n < 1:
        raise ValueError("n must be at least 1")
    masks, vals = _join_masks(space, U, K, n, f, masks=False)
    if len(vals) == 0:
        return np.zeros(0), np.zeros(0)
    _, inverse = np.unique(masks, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    cells = inverse.max() + 1
    sup = np.full(cells, -np.inf)
    inf = np.full(cells, np.inf)
    np.maximum.at(sup, inverse, vals)
    np.minimum.at(inf, inverse, vals)
    return sup, inf


def cover_pressure_terms(space: ShiftSpace, f: Potential, U: Cover, K: CylinderSet, n: int) -> np.ndarray:
    """Sorted per-cell ``sup f_n`` over cells of the joined partition that meet ``K``."""
    return np.sort(_cell_extremes(space, f, U, K, n)[0])


def cover_pressure(space: ShiftSpace, f: Potential, U: Cover, K: CylinderSet, n: int):
    """``log`` of the infimum over refinements of the ``n``-fold join of ``sum sup exp f_n``.

    For a partition the infimum is attained by the join itself; cells missing
    ``K`` contribute nothing.
    """
    return _log_total(_cell_extremes(space, f, U, K, n)[0])


def lower_cover_pressure(space: ShiftSpace, f: Potential, U: Cover, K: CylinderSet, n: int):
    """As :func:`cover_pressure` with the per-cell infimum of ``exp f_n``."""
    return _log_total(_cell_extremes(space, f, U, K, n)[1])


def _atoms(space, f, U, K, n):
    """Atoms of the partition generated by the join, as (per-step masks, sup over K or None)."""
    masks_x, _ = _join_masks(space, U, full_set(space), n, constant_potential(space))
    all_atoms = {tuple(r) for r in masks_x.tolist()}
    if len(all_atoms) > ATOM_LIMIT:
        raise ValueError(f"generated partition has {len(all_atoms)} atoms (limit {ATOM_LIMIT})")
    masks, vals = _join_masks(space, U, K, n, f)
    best: dict = {}
    for key, v in zip(map(tuple, masks.tolist()), vals.tolist()):
        if key not in best or v > best[key]:
            best[key] = v
    return all_atoms, best


def _block_valid(keys) -> bool:
    acc = None
    for key in keys:
        acc = list(key) if acc is None else [a & b for a, b in zip(acc, key)]
    return all(a != 0 for a in acc)


def cover_pressure_exact(space: ShiftSpace, f: Potential, U: Cover, K: CylinderSet, n: int):
    """Cover pressure of an arbitrary cylinder cover by minimizing over coarsenings.

    The minimum runs over partitions whose atoms are unions of atoms generated
    by the join and lie inside single join members; only atoms meeting ``K``
    carry weight, so a subset DP over those atoms is exact.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _, best = _atoms(space, f, U, K, n)
    if not best:
        return EMPTY
    keys = sorted(best)
    m = len(keys)
    top = max(best.values())
    weight = [math.exp(best[key] - top) for key in keys]
    full = (1 << m) - 1
    cost = {}
    for sub in range(1, full + 1):
        members = [keys[i] for i in range(m) if sub >> i & 1]
        if _block_valid(members):
            cost[sub] = max(weight[i] for i in range(m) if sub >> i & 1)
    dp = [math.inf] * (full + 1)
    dp[0] = 0.0
    for S in range(1, full + 1):
        low = S & -S
        rest = S ^ low
        sub = rest
        while True:
            block = sub | low
            c = cost.get(block)
            if c is not None and dp[S ^ block] + c < dp[S]:
                dp[S] = dp[S ^ block] + c
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return math.log(dp[full]) + top


@dataclass(frozen=True)
class CoverEntropy:
    values: tuple  # ((n, log N(U_0^{n-1}, K)), ...)
    estimate: float


def _min_cover_count(keys: list) -> int:
    """Fewest join members covering the given atoms (exact subset DP)."""
    m = len(keys)
    full = (1 << m) - 1
    # each join member is a tuple of single bits; collect the atom subsets they contain
    n = len(keys[0])
    choices = set()
    for key in keys:
        bits = [[1 << b for b in range(key[i].bit_length()) if key[i] >> b & 1] for i in range(n)]
        stack = [()]
        for options in bits:
            stack = [t + (b,) for t in stack for b in options]
        choices.update(stack)
    sets = set()
    for member in choices:
        sets.add(sum(1 << j for j, key in enumerate(keys) if all(key[i] & member[i] for i in range(n))))
    dp = [math.inf] * (full + 1)
    dp[0] = 0
    for S in range(full + 1):
        if dp[S] == math.inf:
            continue
        for s in sets:
            T = S | s
            if dp[S] + 1 < dp[T]:
                dp[T] = dp[S] + 1
    return dp[full]


def cover_entropy(space: ShiftSpace, U: Cover, K: CylinderSet, n_max: int) -> CoverEntropy:
    """``log N`` of the joined cover restricted to ``K`` and the infimum of ``(1/n) log N``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if K.is_empty:
        raise ValueError("entropy of the empty set is undefined")
    zero = constant_potential(space)
    values = []
    for n in range(1, n_max + 1):
        if U.is_partition:
            count = len(_cell_extremes(space, zero, U, K, n)[0])
        else:
            masks, _ = _join_masks(space, U, K, n, zero)
            keys = sorted({tuple(r) for r in masks.tolist()})
            if len(keys) > 16:
                raise ValueError("general covers are limited to 16 atoms meeting K")
            count = _min_cover_count(keys)
        values.append((n, math.log(count)))
    return CoverEntropy(tuple(values), min(h / n for n, h in values))


# ---------------------------------------------------------------------------
# limits

@dataclass(frozen=True)
class PressureEstimate:
    """Finite-``n`` samples of ``(1/n) log P_n`` and their extrapolated limit.

    ``trace`` holds ``(resolution, extrapolated)`` for every resolution of the
    outer pass and ``grid`` the sample sequence of each; ``samples`` and
    ``extrapolated`` belong to the finest resolution.
    """

    samples: tuple
    extrapolated: float
    method: str
    resolution: str
    slope: float = 0.0
    trace: tuple = ()
    grid: tuple = ()
    monotone: bool = True
    notes: tuple = field(default=())

    @property
    def last_sample(self) -> float:
        return self.samples[-1][1]

    def to_dict(self) -> dict:
        return {
            "samples": [[n, v] for n, v in self.samples],
            "extrapolated": self.extrapolated,
            "method": self.method,
            "resolution": self.resolution,
            "last_sample": self.last_sample,
            "slope": self.slope,
            "trace": [[r, v] for r, v in self.trace],
            "monotone": self.monotone,
            "notes": list(self.notes),
        }

    def csv_rows(self) -> list:
        """``(resolution, n, value)`` for every sample of every resolution."""
        return [(r, n, v) for r, samples in self.grid for n, v in samples]


def extrapolate(samples) -> tuple:
    """Fit ``value(n) = a + b/n`` on the top half of the samples.

    Returns ``(a, b, method)``; falls back to the last sample when fewer than
    two points are available.
    """
    samples = sorted(samples)
    if any(b[0] <= a[0] for a, b in zip(samples, samples[1:])):
        raise ValueError("samples must be strictly increasing in n")
    top = samples[len(samples) // 2:]
    if len(top) < 2:
        return samples[-1][1], 0.0, "last_sample"
    inv = np.array([1.0 / n for n, _ in top])
    vals = np.array([v for _, v in top])
    b, a = np.polyfit(inv, vals, 1)
    return float(a), float(b), "affine_fit"


def _monotone_in_n(samples) -> bool:
    diffs = np.diff([v for _, v in samples])
    return bool((diffs >= -1e-12).all() or (diffs <= 1e-12).all())


def assemble_estimate(grid: dict, label: str, noise: float = 1e-6) -> PressureEstimate:
    """Two-pass estimate from ``{resolution: [(n, value), ...]}`` (resolutions ascending)."""
    resolutions = list(grid)
    if any(b <= a for a, b in zip(resolutions, resolutions[1:])):
        raise ValueError("resolutions must be strictly increasing")
    trace = []
    notes = []
    fits = {}
    for r in resolutions:
        a, b, method = extrapolate(grid[r])
        fits[r] = (a, b, method)
        trace.append((r, a))
        if not _monotone_in_n(grid[r]):
            notes.append(f"{label}={r}: samples are not monotone in n")
    values = [a for _, a in trace]
    monotone = all(y >= x - noise for x, y in zip(values, values[1:]))
    if not monotone:
        notes.append(f"extrapolated values decrease as {label} grows")
    last = resolutions[-1]
    a, b, method = fits[last]
    return PressureEstimate(
        samples=tuple(grid[last]),
        extrapolated=a,
        method=method,
        resolution=f"{label}={last}",
        slope=b,
        trace=tuple(trace),
        grid=tuple((r, tuple(grid[r])) for r in resolutions),
        monotone=monotone,
        notes=tuple(notes),
    )


def _check_grid_args(n_max, q_list):
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    q_list = list(q_list)
    if not q_list or any(b <= a for a, b in zip(q_list, q_list[1:])):
        raise ValueError("resolution list must be non-empty and strictly increasing")
    return q_list


def bowen_pressure(space: ShiftSpace, f: Potential, K: CylinderSet, n_max: int = 16,
                   q_list=(1, 2, 3), backward: bool = False) -> PressureEstimate:
    """Pressure of ``T`` (or ``T^-1``) on the closed set ``K``: ``delta -> 0`` of the growth rate."""
    q_list = _check_grid_args(n_max, q_list)
    if K.is_empty:
        raise ValueError("pressure of the empty set is undefined")
    grid = {}
    for q in q_list:
        grid[q] = [(n, separated_pressure(space, f, K, n, q, backward) / n) for n in range(1, n_max + 1)]
    return assemble_estimate(grid, "q")


def pressure_of_full_space(space: ShiftSpace, f: Potential, n_max: int = 16, q_list=(1, 2, 3)) -> PressureEstimate:
    return bowen_pressure(space, f, full_set(space), n_max, q_list)


def cover_pressure_estimate(space: ShiftSpace, f: Potential, K_of_n, depths, n_max: int = 16,
                            partition=None) -> PressureEstimate:
    """Growth rate of cover pressure over a family of partitions, the sup taken over ``depths``.

    ``K_of_n`` is a closed set or a callable ``n -> K_n``; ``partition(depth)``
    builds the cover (ball partitions by default).
    """
    from .symbolic import ball_partition
    depths = _check_grid_args(n_max, depths)
    build = partition or (lambda d: ball_partition(space, d))
    get_k = K_of_n if callable(K_of_n) else (lambda n: K_of_n)
    grid = {}
    for d in depths:
        U = build(d)
        grid[d] = [(n, cover_pressure(space, f, U, get_k(n), n) / n) for n in range(1, n_max + 1)]
    return assemble_estimate(grid, "depth")
