"""Stable sets, preimage pressure, dispersal rates and pressure-point scans."""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .potential import Potential, constant_potential
from .pressure import EMPTY, PressureEstimate, assemble_estimate, bowen_pressure, separated_pressure
from .symbolic import (
    CylinderSet,
    PointRepr,
    ShiftSpace,
    check_point,
    cylinder_set,
    diameter,
    image_set,
    periodic_points,
    preimage_set,
    singleton,
)


def thread_count() -> int:
    """Worker cap from ``PRESSLAB_THREADS`` (default: CPU count, at least 1)."""
    raw = os.environ.get("PRESSLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"PRESSLAB_THREADS must be an integer, got {raw!r}") from None
    return max(1, os.cpu_count() or 1)


def dyadic_exponent(radius: float, base: int = 2) -> int:
    """``q`` with ``radius == base**-q`` (radii of the form ``base**-q`` only)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    q = round(-math.log(radius, base))
    if q < 0 or not math.isclose(radius, float(Fraction(base) ** -q), rel_tol=1e-12):
        raise ValueError(f"radius {radius} is not of the form {base}**-q with q >= 0")
    return q


def epsilon_stable_set(space: ShiftSpace, x: PointRepr, q: int, include_time_zero: bool = True) -> CylinderSet:
    """``W^s_eps(x, T)`` for ``eps = base**-q``.

    Every iterate ``n >= 0`` is constrained by default; with
    ``include_time_zero=False`` only ``n >= 1`` is, which frees one more
    coordinate.
    """
    if q < 1:
        raise ValueError("epsilon must be below 1 (q >= 1)")
    check_point(space, x)
    if space.two_sided:
        cut = -(q - 1) if include_time_zero else -(q - 2)
        y = x.shift(cut)
        r = y.phase % len(y.period)
        tail = PointRepr(y.period[r:] + y.period[:r])
        return CylinderSet(cut, np.zeros((1, 0), dtype=np.uint8), tail)
    if include_time_zero:
        return singleton(space, x)
    tail = x.shift(1)
    firsts = [[a] for a in range(space.alphabet_size) if space.adjacency[a][tail[0]]]
    return cylinder_set(space, 0, firsts, tail=tail)


def stable_preimages(space: ShiftSpace, W: CylinderSet, n_max: int) -> list:
    """``[T^-1 W, T^-2 W, ..., T^-n_max W]``."""
    out, K = [], W
    for _ in range(n_max):
        K = preimage_set(space, K, 1)
        out.append(K)
    return out


def preimage_pressure(space: ShiftSpace, f: Potential, x: PointRepr, q: int, p_list=(1, 2, 3),
                      n_max: int = 16, include_time_zero: bool = True) -> PressureEstimate:
    """Pressure of the preimages ``T^-n W^s_eps(x, T)`` with separation ``base**-p``."""
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    p_list = list(p_list)
    W = epsilon_stable_set(space, x, q, include_time_zero)
    sets = stable_preimages(space, W, n_max)
    grid = {}
    for p in p_list:
        grid[p] = [(n, separated_pressure(space, f, sets[n - 1], n, p) / n) for n in range(1, n_max + 1)]
    return assemble_estimate(grid, "p")


def dispersal_rate(space: ShiftSpace, x: PointRepr, q: int, p_list=(1, 2, 3), n_max: int = 16,
                   include_time_zero: bool = True) -> PressureEstimate:
    """Preimage pressure of the zero potential."""
    return preimage_pressure(space, constant_potential(space), x, q, p_list, n_max, include_time_zero)


def scan_points(space: ShiftSpace, count: int = 8, max_period: int = 3) -> list:
    """Deterministic scan set: the first ``count`` periodic points of least period ``<= max_period``."""
    return periodic_points(space, max_period, count)


@dataclass(frozen=True)
class ScanEntry:
    point: str
    epsilon: float
    estimate: float
    oracle: float
    gap: float
    verdict: bool
    detail: PressureEstimate

    def to_dict(self) -> dict:
        return {
            "point": self.point,
            "epsilon": self.epsilon,
            "estimate": self.estimate,
            "oracle": self.oracle,
            "gap": self.gap,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class ScanReport:
    entries: tuple
    sup_estimate: float
    reference: float
    equality_gap: float
    tolerance: float

    @property
    def all_pressure_points(self) -> bool:
        return all(e.verdict for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "points": [e.to_dict() for e in self.entries],
            "sup_estimate": self.sup_estimate,
            "reference": self.reference,
            "equality_gap": self.equality_gap,
            "tolerance": self.tolerance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def pressure_point_scan(space: ShiftSpace, f: Potential, points, q: int, tolerance: float = 0.02,
                        reference: float | None = None, p_list=(1, 2, 3), n_max: int = 16) -> ScanReport:
    """Compare the preimage pressure at each point against the pressure of ``T``.

    ``reference`` defaults to the transfer-matrix pressure of ``f``.
    """
    points = list(points)
    if not points:
        raise ValueError("the point list is empty")
    if reference is None:
        from .oracle import transfer_pressure
        reference = transfer_pressure(space, f)
    eps = float(Fraction(space.metric_base) ** -q)

    def one(x):
        est = preimage_pressure(space, f, x, q, p_list, n_max)
        gap = abs(est.extrapolated - reference)
        return ScanEntry(x.describe(), eps, est.extrapolated, reference, gap, gap <= tolerance, est)

    with ThreadPoolExecutor(max_workers=min(thread_count(), len(points))) as pool:
        entries = list(pool.map(one, points))
    entries.sort(key=lambda e: e.point)
    sup = max(e.estimate for e in entries)
    return ScanReport(tuple(entries), sup, reference, abs(sup - reference), tolerance)


@dataclass(frozen=True)
class BackwardReport:
    estimate: PressureEstimate
    diameters: tuple  # ((n, diam T^n A(x)), ...) as exact fractions
    stable_set: CylinderSet


def stable_cylinder(space: ShiftSpace, x: PointRepr, m: int) -> CylinderSet:
    """``A(x) = {y : y_i = x_i for all i >= -(m-1)}``."""
    if not space.two_sided:
        raise ValueError("stable cylinders live in two-sided spaces")
    if m < 1:
        raise ValueError("cut m must be at least 1")
    return epsilon_stable_set(space, x, m)


def stable_cylinder_pressure_backward(space: ShiftSpace, f: Potential, x: PointRepr, m: int,
                                      n_max: int = 16, q_list=(1, 2, 3), diam_steps: int = 10) -> BackwardReport:
    """Pressure of ``T^-1`` on the stable cylinder ``A(x)`` and the diameters of ``T^n A(x)``."""
    A = stable_cylinder(space, x, m)
    estimate = bowen_pressure(space, f, A, n_max, q_list, backward=True)
    diams = tuple((n, diameter(space, image_set(space, A, n))) for n in range(diam_steps + 1))
    return BackwardReport(estimate, diams, A)
