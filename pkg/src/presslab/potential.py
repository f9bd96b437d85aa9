"""Locally constant potentials and their Birkhoff sums."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .symbolic import (
    CylinderSet,
    Cover,
    PointRepr,
    ShiftSpace,
    TWO_SIDED,
    cover_labels,
    format_word,
    materialize,
    parse_word,
    row_keys,
    unique_rows,
    word_array,
)


@dataclass(frozen=True, eq=False)
class Potential:
    """A function of the coordinates ``[offset, offset + depth)`` of a point.

    ``values`` maps every admissible word of length ``depth`` to a real.
    ``offset`` is 0 except for potentials composed with negative powers of an
    invertible shift.
    """

    space: ShiftSpace
    depth: int
    values: Mapping
    offset: int = 0

    @cached_property
    def table(self) -> np.ndarray:
        """Dense lookup indexed by the base-``k`` code of a word (NaN if inadmissible)."""
        k = self.space.alphabet_size
        table = np.full(k ** self.depth, np.nan)
        for word, v in self.values.items():
            code = 0
            for s in word:
                code = code * k + s
            table[code] = v
        table.setflags(write=False)
        return table

    @property
    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values.values())

    def __call__(self, x: PointRepr) -> float:
        return self.values[x.window(self.offset, self.offset + self.depth)]

    def __repr__(self):
        return f"Potential(depth={self.depth}, offset={self.offset}, {len(self.values)} words)"


def make_potential(space: ShiftSpace, depth: int, values: Mapping, offset: int = 0) -> Potential:
    """Validated potential: exactly the admissible ``depth``-words must have values."""
    if depth < 1:
        raise ValueError("depth must be positive")
    if offset and not space.two_sided:
        if offset < 0:
            raise ValueError("one-sided potentials cannot read negative coordinates")
    table = {}
    for word, v in values.items():
        w = parse_word(word)
        if len(w) != depth:
            raise ValueError(f"word {format_word(w)!r} does not have length {depth}")
        if not space.admissible(w):
            raise ValueError(f"word {format_word(w)!r} is not admissible")
        table[w] = float(v)
    missing = [w for w in map(tuple, word_array(space, depth).tolist()) if w not in table]
    if missing:
        raise ValueError(f"missing values for admissible words: {[format_word(w) for w in missing[:5]]}")
    return Potential(space, depth, table, offset)


def symbol_potential(space: ShiftSpace, weights) -> Potential:
    """Depth-1 potential ``f(x) = weights[x_0]``."""
    weights = list(weights)
    if len(weights) != space.alphabet_size:
        raise ValueError("one weight per symbol is required")
    return make_potential(space, 1, {(a,): w for a, w in enumerate(weights)})


def constant_potential(space: ShiftSpace, c: float = 0.0) -> Potential:
    return symbol_potential(space, [c] * space.alphabet_size)


def potential_from_json(space: ShiftSpace, data) -> Potential:
    """``{"depth": r, "values": {"word": real, ...}}``."""
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "values" not in data:
        raise ValueError("potential description needs 'values'")
    values = data["values"]
    depth = int(data.get("depth", len(parse_word(next(iter(values))))))
    return make_potential(space, depth, values, int(data.get("offset", 0)))


def potential_to_json(f: Potential) -> dict:
    out = {"depth": f.depth, "values": {format_word(w): v for w, v in sorted(f.values.items())}}
    if f.offset:
        out["offset"] = f.offset
    return out


def birkhoff_sum(f: Potential, x: PointRepr, n: int) -> float:
    """``f(x) + f(Tx) + ... + f(T^(n-1) x)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 0.0
    for j in range(n):
        total += f.values[x.window(f.offset + j, f.offset + j + f.depth)]
    return total


def birkhoff_window(f: Potential, n: int, backward: bool = False) -> tuple:
    """Coordinates ``[lo, hi)`` read by ``f_n`` (for ``T`` or, if backward, ``T^-1``)."""
    if backward:
        return f.offset - (n - 1), f.offset + f.depth
    return f.offset, f.offset + n + f.depth - 1


def birkhoff_rows(f: Potential, rows: np.ndarray, lo: int, n: int, backward: bool = False) -> np.ndarray:
    """Birkhoff sums of the words in ``rows`` (window starting at ``lo``).

    Summation runs ``j = 0, 1, ..., n-1`` in order, like :func:`birkhoff_sum`.
    """
    k = f.space.alphabet_size
    rows = rows.astype(np.int64)
    total = np.zeros(len(rows))
    for j in range(n):
        start = (f.offset - j if backward else f.offset + j) - lo
        code = np.zeros(len(rows), dtype=np.int64)
        for i in range(f.depth):
            code = code * k + rows[:, start + i]
        total += f.table[code]
    return total


def birkhoff_sum_on_cylinder(f: Potential, C: CylinderSet, n: int, mode: str = "sup") -> dict:
    """Per allowed word of ``C``, the sup (or inf) of ``f_n`` over the cylinder within ``C``."""
    if mode not in ("sup", "inf"):
        raise ValueError("mode is 'sup' or 'inf'")
    a, e = C.window_start, C.window_end
    blo, bhi = birkhoff_window(f, n)
    lo, hi = min(a, blo), max(e, bhi)
    rows = materialize(f.space, C, lo, hi)
    vals = birkhoff_rows(f, rows, lo, n)
    groups, inverse = unique_rows(rows[:, a - lo:e - lo], return_inverse=True)
    out = np.full(len(groups), -np.inf if mode == "sup" else np.inf)
    (np.maximum if mode == "sup" else np.minimum).at(out, inverse, vals)
    return {tuple(int(s) for s in g): float(v) for g, v in zip(groups, out)}


def oscillation(f: Potential, U: Cover) -> float:
    """Largest spread ``max f - min f`` of ``f`` over a single member of ``U``."""
    lo_u, L, table = cover_labels(f.space, U)
    lo, hi = min(lo_u, f.offset), max(lo_u + L, f.offset + f.depth)
    rows = word_array(f.space, hi - lo)
    vals = birkhoff_rows(f, rows, lo, 1)
    masks = [table[key] for key in row_keys(rows[:, lo_u - lo:lo_u - lo + L]).tolist()]
    spread = 0.0
    n_members = len(U.members)
    for idx in range(n_members):
        bit = 1 << idx
        sel = np.array([bool(m & bit) for m in masks])
        if sel.any():
            spread = max(spread, float(vals[sel].max() - vals[sel].min()))
    return spread


def lift_potential(f: Potential, extension: ShiftSpace) -> Potential:
    """``f ∘ pi`` on the inverse limit: the same table on the two-sided space."""
    if f.space.two_sided:
        raise ValueError("lift expects a potential on a one-sided space")
    if extension.sidedness != TWO_SIDED or extension.adjacency != f.space.adjacency:
        raise ValueError("extension must be the two-sided twin of the potential's space")
    return Potential(extension, f.depth, dict(f.values), f.offset)


def compose_with_shift(f: Potential, m: int) -> Potential:
    """``f ∘ T^m``.

    For ``m >= 0`` the result is a potential of depth ``depth + m`` reading the
    same window; negative ``m`` (invertible shifts only) moves the offset.
    """
    if m == 0:
        return f
    if m < 0:
        if not f.space.two_sided:
            raise ValueError("T^-m needs a two-sided space")
        return Potential(f.space, f.depth, f.values, f.offset + m)
    depth = f.depth + m
    values = {tuple(int(s) for s in w): f.values[tuple(int(s) for s in w[m:])]
              for w in word_array(f.space, depth)}
    return Potential(f.space, depth, values, f.offset)


def reflect_potential(f: Potential, reflected: ShiftSpace) -> Potential:
    """The potential read on the reflected space (coordinates ``i -> -i``)."""
    values = {w[::-1]: v for w, v in f.values.items()}
    return Potential(reflected, f.depth, values, -(f.offset + f.depth - 1))
