"""Subshifts of finite type: spaces, words, points, cylinder sets and covers.

Words are tuples of integer symbols.  Internally, families of words on a
coordinate window are handled as read-only ``uint8`` arrays of shape
``(count, length)`` kept in lexicographic order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

ONE_SIDED = "one"
TWO_SIDED = "two"

_SIDEDNESS_ALIASES = {
    "one": ONE_SIDED,
    "one_sided": ONE_SIDED,
    "one-sided": ONE_SIDED,
    "two": TWO_SIDED,
    "two_sided": TWO_SIDED,
    "two-sided": TWO_SIDED,
}

Word = tuple


@dataclass(frozen=True)
class ShiftSpace:
    """A one- or two-sided subshift of finite type given by a 0/1 transition matrix.

    ``adjacency[a][b]`` is true iff the two-letter word ``ab`` is admissible.
    The metric is ``metric_base ** -k`` where ``k`` is the first (one-sided) or
    the smallest absolute (two-sided) coordinate at which two points differ.
    """

    alphabet_size: int
    adjacency: tuple
    sidedness: str = ONE_SIDED
    metric_base: int = 2

    def __post_init__(self):
        k = self.alphabet_size
        if not isinstance(k, (int, np.integer)) or k < 1:
            raise ValueError(f"alphabet_size must be a positive integer, got {k!r}")
        rows = tuple(tuple(bool(v) for v in row) for row in self.adjacency)
        if len(rows) != k or any(len(row) != k for row in rows):
            raise ValueError(f"adjacency must be {k}x{k}")
        object.__setattr__(self, "adjacency", rows)
        side = _SIDEDNESS_ALIASES.get(str(self.sidedness).lower())
        if side is None:
            raise ValueError(f"unknown sidedness {self.sidedness!r}")
        object.__setattr__(self, "sidedness", side)
        if not self.metric_base > 1:
            raise ValueError("metric_base must exceed 1")
        mat = np.array(rows, dtype=bool)
        if not mat.any(axis=1).all():
            raise ValueError("adjacency has a row without successors; the shift is not surjective")
        if not mat.any(axis=0).all():
            raise ValueError("adjacency has a column without predecessors; the shift is not surjective")

    @cached_property
    def matrix(self) -> np.ndarray:
        mat = np.array(self.adjacency, dtype=bool)
        mat.setflags(write=False)
        return mat

    @property
    def two_sided(self) -> bool:
        return self.sidedness == TWO_SIDED

    def admissible(self, word: Sequence[int]) -> bool:
        k = self.alphabet_size
        if any(not 0 <= s < k for s in word):
            return False
        return all(self.adjacency[a][b] for a, b in zip(word, word[1:]))

    def __repr__(self):
        rows = "".join("".join("1" if v else "0" for v in row) + "/" for row in self.adjacency)
        return f"ShiftSpace(k={self.alphabet_size}, {rows[:-1]}, {self.sidedness}-sided)"


def build_sft(alphabet_size: int, adjacency, sidedness: str = ONE_SIDED, metric_base: int = 2) -> ShiftSpace:
    """Validate and build a :class:`ShiftSpace`."""
    return ShiftSpace(alphabet_size, adjacency, sidedness, metric_base)


def full_shift(k: int = 2, sidedness: str = ONE_SIDED) -> ShiftSpace:
    return build_sft(k, [[True] * k for _ in range(k)], sidedness)


def golden_mean_shift(sidedness: str = ONE_SIDED) -> ShiftSpace:
    """The shift on {0, 1} forbidding the word ``11``."""
    return build_sft(2, [[True, True], [True, False]], sidedness)


def parse_word(text) -> Word:
    """Parse ``"0110"`` or ``"1,10,3"`` (alphabets above ten) into a word."""
    if isinstance(text, (list, tuple)):
        return tuple(int(s) for s in text)
    text = str(text)
    if "," in text:
        return tuple(int(s) for s in text.split(",") if s != "")
    return tuple(int(s) for s in text)


def format_word(word: Sequence[int]) -> str:
    if any(s > 9 for s in word):
        return ",".join(str(s) for s in word)
    return "".join(str(s) for s in word)


def space_from_json(data) -> ShiftSpace:
    """Build a space from a parsed JSON document (or a JSON string).

    Accepts ``{"alphabet": k, "adjacency": [[0/1, ...], ...], "sidedness": "one"|"two"}``
    or the forbidden-word form ``{"alphabet": k, "forbidden": ["11"], "block_length": 2}``.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "alphabet" not in data:
        raise ValueError("space description needs an 'alphabet' field")
    k = int(data["alphabet"])
    sidedness = data.get("sidedness", ONE_SIDED)
    if "adjacency" in data:
        adjacency = [[bool(v) for v in row] for row in data["adjacency"]]
    elif "forbidden" in data:
        block = int(data.get("block_length", 2))
        if block != 2:
            raise ValueError("only block_length 2 forbidden words are supported")
        adjacency = [[True] * k for _ in range(k)]
        for text in data["forbidden"]:
            word = parse_word(text)
            if len(word) != 2 or not all(0 <= s < k for s in word):
                raise ValueError(f"forbidden word {text!r} is not a two-letter word over the alphabet")
            adjacency[word[0]][word[1]] = False
    else:
        raise ValueError("space description needs 'adjacency' or 'forbidden'")
    return build_sft(k, adjacency, sidedness, data.get("metric_base", 2))


def space_to_json(space: ShiftSpace) -> dict:
    return {
        "alphabet": space.alphabet_size,
        "adjacency": [[int(v) for v in row] for row in space.adjacency],
        "sidedness": space.sidedness,
    }


# ---------------------------------------------------------------------------
# word arrays

def _extend_right(space: ShiftSpace, rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 0:
        return np.arange(space.alphabet_size, dtype=np.uint8)[:, None].repeat(len(rows), axis=0)
    mask = space.matrix[rows[:, -1]]
    idx, sym = np.nonzero(mask)
    return np.column_stack([rows[idx], sym.astype(np.uint8)])


def _extend_left(space: ShiftSpace, rows: np.ndarray) -> np.ndarray:
    if rows.shape[1] == 0:
        return np.arange(space.alphabet_size, dtype=np.uint8)[:, None].repeat(len(rows), axis=0)
    # symbol-major order keeps lexicographically sorted input sorted
    mask = space.matrix[:, rows[:, 0]]
    sym, idx = np.nonzero(mask)
    return np.column_stack([sym.astype(np.uint8), rows[idx]])


def _append_fixed(space: ShiftSpace, rows: np.ndarray, symbol: int) -> np.ndarray:
    if rows.shape[1]:
        rows = rows[space.matrix[rows[:, -1], symbol]]
    return np.column_stack([rows, np.full(len(rows), symbol, dtype=np.uint8)])


def _admissible_rows(space: ShiftSpace, rows: np.ndarray) -> np.ndarray:
    ok = np.ones(len(rows), dtype=bool)
    for j in range(rows.shape[1] - 1):
        ok &= space.matrix[rows[:, j], rows[:, j + 1]]
    return ok


def row_keys(rows: np.ndarray) -> np.ndarray:
    """One opaque, lexicographically ordered key per row (for sorting and grouping)."""
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    if rows.shape[1] == 0:
        return np.zeros(len(rows), dtype=np.int64)
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


def unique_rows(rows: np.ndarray, return_inverse: bool = False):
    """Sorted unique rows, optionally with the group index of every input row."""
    if rows.shape[1] == 0:
        uniq = np.zeros((min(len(rows), 1), 0), dtype=np.uint8)
        if return_inverse:
            return uniq, np.zeros(len(rows), dtype=np.intp)
        return uniq
    keys = row_keys(rows)
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    uniq = np.ascontiguousarray(rows[first], dtype=np.uint8)
    if return_inverse:
        return uniq, inverse.reshape(-1)
    return uniq


def _frozen(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=128)
def word_array(space: ShiftSpace, n: int) -> np.ndarray:
    """Admissible words of length ``n`` as a sorted ``(count, n)`` array."""
    if n < 0:
        raise ValueError("word length must be non-negative")
    rows = np.zeros((1, 0), dtype=np.uint8)
    for _ in range(n):
        rows = _extend_right(space, rows)
    return _frozen(rows)


def words_of_length(space: ShiftSpace, n: int) -> list:
    """All admissible words of length ``n`` in lexicographic order."""
    return [tuple(int(s) for s in row) for row in word_array(space, n)]


# ---------------------------------------------------------------------------
# points

@dataclass(frozen=True)
class PointRepr:
    """An eventually periodic one-sided point or a periodic two-sided point.

    One-sided: ``preperiod + period + period + ...``.  Two-sided:
    ``x_i = period[(i + phase) % len(period)]`` for every integer ``i``.
    The representation is normalized on construction, so equal sequences
    compare equal.
    """

    period: tuple
    preperiod: tuple = ()
    phase: int = 0
    two_sided: bool = False

    def __post_init__(self):
        period = tuple(int(s) for s in self.period)
        pre = tuple(int(s) for s in self.preperiod)
        if not period:
            raise ValueError("period must be non-empty")
        for p in range(1, len(period) + 1):
            if len(period) % p == 0 and period == period[:p] * (len(period) // p):
                period = period[:p]
                break
        phase = int(self.phase)
        if self.two_sided:
            if pre:
                raise ValueError("two-sided points carry no preperiod")
            p = len(period)
            rotations = [period[i:] + period[:i] for i in range(p)]
            shift = min(range(p), key=lambda i: rotations[i])
            # x_i = period[(i + phase) % p] = rot[(i + phase - shift) % p]
            period, phase = rotations[shift], (phase - shift) % p
        else:
            if phase:
                raise ValueError("one-sided points carry no phase")
            while pre and pre[-1] == period[-1]:
                pre = pre[:-1]
                period = period[-1:] + period[:-1]
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "phase", phase)

    def __getitem__(self, i: int) -> int:
        if self.two_sided:
            return self.period[(i + self.phase) % len(self.period)]
        if i < 0:
            raise IndexError("one-sided points have no negative coordinates")
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def window(self, lo: int, hi: int) -> tuple:
        return tuple(self[i] for i in range(lo, hi))

    def shift(self, n: int = 1) -> "PointRepr":
        """The point ``T^n x`` (negative ``n`` only for two-sided points)."""
        if self.two_sided:
            return PointRepr(self.period, phase=self.phase + n, two_sided=True)
        if n < 0:
            raise ValueError("T^-1 is not defined on one-sided points")
        if n <= len(self.preperiod):
            return PointRepr(self.period, self.preperiod[n:])
        r = (n - len(self.preperiod)) % len(self.period)
        return PointRepr(self.period[r:] + self.period[:r])

    def describe(self) -> str:
        if self.two_sided:
            return f"({format_word(self.period)})@{self.phase}"
        return f"{format_word(self.preperiod)}({format_word(self.period)})"


def one_sided_point(period, preperiod=()) -> PointRepr:
    return PointRepr(parse_word(period), parse_word(preperiod))


def two_sided_point(period, phase: int = 0) -> PointRepr:
    return PointRepr(parse_word(period), (), phase, two_sided=True)


def check_point(space: ShiftSpace, x: PointRepr) -> PointRepr:
    if x.two_sided != space.two_sided:
        raise ValueError("point sidedness does not match the space")
    seq = x.preperiod + x.period + x.period[:1]
    if not space.admissible(seq):
        raise ValueError(f"point {x.describe()} is not admissible")
    return x


def periodic_points(space: ShiftSpace, max_period: int, limit: int | None = None) -> list:
    """Distinct periodic points of least period <= ``max_period``.

    Ordered by least period, then by the word read from coordinate 0.
    """
    out = []
    for p in range(1, max_period + 1):
        for w in words_of_length(space, p):
            if not space.adjacency[w[-1]][w[0]]:
                continue
            if any(p % d == 0 and w == w[:d] * (p // d) for d in range(1, p)):
                continue
            if space.two_sided:
                out.append(PointRepr(w, phase=0, two_sided=True))
            else:
                out.append(PointRepr(w))
    seen, uniq = set(), []
    for x in out:
        if x not in seen:
            seen.add(x)
            uniq.append(x)
    return uniq[:limit] if limit is not None else uniq


def metric(space: ShiftSpace, x: PointRepr, y: PointRepr) -> Fraction:
    """Exact distance ``base ** -k`` between two represented points."""
    if x.two_sided != space.two_sided or y.two_sided != space.two_sided:
        raise ValueError("mismatched sidedness")
    base = Fraction(space.metric_base)
    span = math.lcm(len(x.period), len(y.period))
    if space.two_sided:
        for k in range(span + 1):
            if x[k] != y[k] or x[-k] != y[-k]:
                return base ** -k
        return Fraction(0)
    for k in range(max(len(x.preperiod), len(y.preperiod)) + span):
        if x[k] != y[k]:
            return base ** -k
    return Fraction(0)


def orbit_metric(space: ShiftSpace, x: PointRepr, y: PointRepr, n: int) -> Fraction:
    """Bowen distance: the largest of ``metric(T^i x, T^i y)`` for ``0 <= i < n``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return max(metric(space, x.shift(i), y.shift(i)) for i in range(n))


# ---------------------------------------------------------------------------
# cylinder sets

class CylinderSet:
    """A closed set ``{y : y[window] in allowed, y_i = tail[i - end] for i >= end}``.

    ``end`` is ``window_start + window_length``.  Without a tail the
    coordinates outside the window are only subject to admissibility.  The
    tail, when present, is a one-sided point; it is how the artifact holds
    single points, stable sets and their preimages.  Build instances with
    :func:`cylinder_set`, which canonicalizes.
    """

    __slots__ = ("window_start", "words", "tail", "__dict__")

    def __init__(self, window_start: int, words: np.ndarray, tail: PointRepr | None = None):
        self.window_start = int(window_start)
        self.words = _frozen(words)
        self.tail = tail

    @property
    def window_length(self) -> int:
        return self.words.shape[1]

    @property
    def window_end(self) -> int:
        return self.window_start + self.window_length

    @cached_property
    def allowed(self) -> frozenset:
        return frozenset(tuple(int(s) for s in row) for row in self.words)

    @property
    def is_empty(self) -> bool:
        return len(self.words) == 0

    def __len__(self):
        return len(self.words)

    def __eq__(self, other):
        if not isinstance(other, CylinderSet):
            return NotImplemented
        return (
            self.window_start == other.window_start
            and self.words.shape == other.words.shape
            and self.tail == other.tail
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self):
        return hash((self.window_start, self.words.shape, self.words.tobytes(), self.tail))

    def __repr__(self):
        tail = f", tail={self.tail.describe()}" if self.tail is not None else ""
        return (
            f"CylinderSet([{self.window_start}, {self.window_end}), "
            f"{len(self.words)} words{tail})"
        )


def cylinder_set(space: ShiftSpace, window_start: int, words, tail: PointRepr | None = None,
                 length: int | None = None) -> CylinderSet:
    """Canonical :class:`CylinderSet`: inadmissible words dropped, rows sorted.

    One-sided sets are re-expressed on a window starting at 0 by prefix
    expansion.
    """
    if isinstance(words, np.ndarray):
        rows = np.asarray(words)
        if rows.ndim != 2:
            raise ValueError("word array must be two-dimensional")
    else:
        words = [tuple(parse_word(w)) for w in words]
        if not words:
            if length is None:
                raise ValueError("length is required for an empty word list")
            rows = np.zeros((0, length), dtype=np.uint8)
        else:
            lengths = {len(w) for w in words}
            if len(lengths) != 1:
                raise ValueError("all words of a cylinder set share one length")
            rows = np.array(words, dtype=np.int64).reshape(len(words), lengths.pop())
    if rows.size and (rows.min() < 0 or rows.max() >= space.alphabet_size):
        rows = rows[((rows >= 0) & (rows < space.alphabet_size)).all(axis=1)]
    rows = rows.astype(np.uint8)
    rows = rows[_admissible_rows(space, rows)]
    if tail is not None:
        if tail.two_sided:
            raise ValueError("tails are one-sided points")
        check_point(ONE_SIDED_VIEW[space], tail)
        if rows.shape[1]:
            rows = rows[space.matrix[rows[:, -1], tail[0]]]
    if not space.two_sided:
        if window_start < 0:
            raise ValueError("one-sided cylinder sets live on non-negative coordinates")
        for _ in range(window_start):
            if rows.shape[1] == 0:
                fixed = tail[0] if tail is not None else None
                rows = np.arange(space.alphabet_size, dtype=np.uint8)[:, None].repeat(len(rows), axis=0)
                if fixed is not None:
                    rows = rows[space.matrix[rows[:, 0], fixed]]
                    if len(rows) == 0:
                        rows = np.zeros((0, 1), dtype=np.uint8)
            else:
                rows = _extend_left(space, rows)
        window_start = 0
    return CylinderSet(window_start, unique_rows(rows) if len(rows) else rows.reshape(0, rows.shape[1]), tail)


class _OneSidedView(dict):
    """Cache of one-sided twins, used to validate tails."""

    def __missing__(self, space):
        twin = ShiftSpace(space.alphabet_size, space.adjacency, ONE_SIDED, space.metric_base)
        self[space] = twin
        return twin


ONE_SIDED_VIEW = _OneSidedView()


def full_set(space: ShiftSpace) -> CylinderSet:
    """The whole space ``X``."""
    return CylinderSet(0, np.zeros((1, 0), dtype=np.uint8))


def empty_set(space: ShiftSpace) -> CylinderSet:
    return CylinderSet(0, np.zeros((0, 0), dtype=np.uint8))


def word_cylinder(space: ShiftSpace, word, window_start: int = 0) -> CylinderSet:
    return cylinder_set(space, window_start, [parse_word(word)])


def singleton(space: ShiftSpace, x: PointRepr) -> CylinderSet:
    """``{x}`` for a one-sided point ``x``."""
    if space.two_sided:
        raise ValueError("two-sided singletons are not cylinder sets")
    check_point(space, x)
    return CylinderSet(0, np.zeros((1, 0), dtype=np.uint8), x)


def materialize(space: ShiftSpace, K: CylinderSet, lo: int, hi: int) -> np.ndarray:
    """Sorted array of the words on coordinates ``[lo, hi)`` of points of ``K``."""
    if hi < lo:
        raise ValueError("empty window")
    if not space.two_sided and lo < 0:
        raise ValueError("one-sided points have no negative coordinates")
    width = hi - lo
    if K.is_empty:
        return _frozen(np.zeros((0, width), dtype=np.uint8))
    a, e = K.window_start, K.window_end
    rows = K.words
    start = a
    if rows.shape[1] == 0:
        if K.tail is not None:
            rows = np.array([[K.tail[0]]], dtype=np.uint8)
        else:
            rows = np.arange(space.alphabet_size, dtype=np.uint8)[:, None]
        cur_end = a + 1
    else:
        cur_end = e
    target_end = max(hi, cur_end)
    while cur_end < target_end:
        if K.tail is not None:
            rows = _append_fixed(space, rows, K.tail[cur_end - e])
        else:
            rows = _extend_right(space, rows)
        cur_end += 1
    while start > lo:
        rows = _extend_left(space, rows)
        start -= 1
    cols = slice(lo - start, hi - start)
    if lo - start == 0 and hi - start == rows.shape[1]:
        return _frozen(rows)
    return _frozen(unique_rows(rows[:, cols]))


def contains_point(space: ShiftSpace, K: CylinderSet, x: PointRepr) -> bool:
    """Membership of a represented point in ``K``."""
    if K.is_empty:
        return False
    if K.window_length and x.window(K.window_start, K.window_end) not in K.allowed:
        return False
    if K.tail is None:
        return True
    e = K.window_end
    if x.two_sided:
        y = PointRepr(x.period, phase=x.phase + e, two_sided=True)
        span = len(y.period) * len(K.tail.period) + len(K.tail.preperiod)
        return all(y[j] == K.tail[j] for j in range(span))
    return x.shift(e) == K.tail


def preimage_set(space: ShiftSpace, K: CylinderSet, n: int) -> CylinderSet:
    """``T^-n K``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0 or K.is_empty:
        return K
    if space.two_sided:
        return CylinderSet(K.window_start + n, K.words, K.tail)
    rows = K.words
    if rows.shape[1] == 0:
        if K.tail is None:
            return K
        rows = np.array([[K.tail[0]]], dtype=np.uint8)
        for _ in range(n):
            rows = _extend_left(space, rows)
        return CylinderSet(0, rows[:, :-1], K.tail)
    for _ in range(n):
        rows = _extend_left(space, rows)
    return CylinderSet(0, rows, K.tail)


def image_set(space: ShiftSpace, K: CylinderSet, n: int) -> CylinderSet:
    """``T^n K`` for ``n >= 0`` (``T^-n`` images go through :func:`preimage_set`)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0 or K.is_empty:
        return K
    if space.two_sided:
        return CylinderSet(K.window_start - n, K.words, K.tail)
    L = K.window_length
    if n <= L:
        return cylinder_set(space, 0, unique_rows(K.words[:, n:]), K.tail)
    if K.tail is None:
        return full_set(space)
    return CylinderSet(0, np.zeros((1, 0), dtype=np.uint8), K.tail.shift(n - L))


def _common_tail_window(A: CylinderSet, B: CylinderSet) -> int | None:
    """Coordinate from which the tails of A and B agree, or None when they never do."""
    e = max(A.window_end, B.window_end)
    ta = A.tail.shift(e - A.window_end)
    tb = B.tail.shift(e - B.window_end)
    return e if ta == tb else None


def is_subset(space: ShiftSpace, A: CylinderSet, B: CylinderSet) -> bool:
    """Set inclusion ``A ⊆ B`` decided on finite windows."""
    if A.is_empty:
        return True
    if B.is_empty:
        return False
    if B.tail is None:
        if B.window_length == 0:
            return True
        words_a = materialize(space, A, B.window_start, B.window_end)
        keys_b = set(row_keys(B.words).tolist())
        return all(k in keys_b for k in row_keys(words_a).tolist())
    if A.tail is None:
        return False
    e = _common_tail_window(A, B)
    if e is None:
        return False
    lo = min(A.window_start, B.window_start)
    if not space.two_sided:
        lo = 0
    wa = materialize(space, A, lo, e)
    wb = materialize(space, B, lo, e)
    keys_b = set(row_keys(wb).tolist())
    return all(k in keys_b for k in row_keys(wa).tolist())


def same_set(space: ShiftSpace, A: CylinderSet, B: CylinderSet) -> bool:
    return is_subset(space, A, B) and is_subset(space, B, A)


def diameter(space: ShiftSpace, K: CylinderSet) -> Fraction:
    """Exact diameter of ``K`` in the shift metric."""
    base = Fraction(space.metric_base)
    if K.is_empty:
        return Fraction(0)
    bound = max(abs(K.window_start), abs(K.window_end)) + space.alphabet_size + 1
    if space.two_sided:
        for t in range(bound + 1):
            if len(materialize(space, K, -t, t + 1)) > 1:
                return base ** -t
        return Fraction(0)
    for t in range(bound + 1):
        if len(materialize(space, K, 0, t + 1)) > 1:
            return base ** -t
    return Fraction(0)


# ---------------------------------------------------------------------------
# covers

@dataclass(frozen=True)
class Cover:
    """A finite cover of ``X`` by tail-free cylinder sets."""

    members: tuple
    is_partition: bool

    def __len__(self):
        return len(self.members)


def _common_window(space: ShiftSpace, members) -> tuple:
    lo = min(m.window_start for m in members)
    hi = max(m.window_end for m in members)
    return lo, hi


def cover_from_members(space: ShiftSpace, members: Iterable[CylinderSet]) -> Cover:
    """Validate that the members cover ``X`` and detect whether they partition it."""
    members = tuple(members)
    if not members:
        raise ValueError("a cover needs at least one member")
    if any(m.tail is not None for m in members):
        raise ValueError("cover members must be tail-free cylinder sets")
    lo, hi = _common_window(space, members)
    every = row_keys(word_array(space, hi - lo)).tolist()
    counts = dict.fromkeys(every, 0)
    for m in members:
        for key in row_keys(materialize(space, m, lo, hi)).tolist():
            counts[key] += 1
    if any(c == 0 for c in counts.values()):
        raise ValueError("members do not cover the space")
    return Cover(members, all(c == 1 for c in counts.values()))


def cylinder_partition(space: ShiftSpace, q: int, window_start: int = 0) -> Cover:
    """Partition of ``X`` into the admissible ``q``-cylinders on ``[window_start, window_start + q)``."""
    if q < 1:
        raise ValueError("depth must be at least 1")
    if not space.two_sided and window_start != 0:
        raise ValueError("one-sided partitions start at coordinate 0")
    members = tuple(CylinderSet(window_start, row[None, :]) for row in word_array(space, q))
    return Cover(members, True)


def ball_partition(space: ShiftSpace, q: int) -> Cover:
    """Partition into closed balls of radius ``base ** -q`` (diameter ``base ** -q``)."""
    if space.two_sided:
        return cylinder_partition(space, 2 * q - 1, -(q - 1))
    return cylinder_partition(space, q)


def cover_labels(space: ShiftSpace, U: Cover) -> tuple:
    """``(lo, length, table)`` where ``table[key]`` is the member bitmask of each window word."""
    lo, hi = _common_window(space, U.members)
    table: dict = {}
    for idx, m in enumerate(U.members):
        for key in row_keys(materialize(space, m, lo, hi)).tolist():
            table[key] = table.get(key, 0) | (1 << idx)
    return lo, hi - lo, table


def join_iterates(space: ShiftSpace, U: Cover, n: int) -> Cover:
    """The partition ``U ∨ T^-1 U ∨ ... ∨ T^-(n-1) U``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not U.is_partition:
        raise ValueError("join_iterates expects a partition")
    if n == 1:
        return U
    lo, L, table = cover_labels(space, U)
    rows = word_array(space, L + n - 1)
    labels = np.column_stack([
        np.array([table[k] for k in row_keys(rows[:, i:i + L]).tolist()], dtype=object)
        for i in range(n)
    ])
    groups: dict = {}
    for r, lab in enumerate(map(tuple, labels)):
        groups.setdefault(lab, []).append(r)
    members = tuple(
        CylinderSet(lo, rows[idx]) for _, idx in sorted(groups.items(), key=lambda kv: kv[1][0])
    )
    return Cover(members, True)


def apply_map_to_cover(space: ShiftSpace, U: Cover, m: int) -> Cover:
    """``T^m U``: positive ``m`` needs a two-sided space, negative ``m`` takes preimages."""
    if m == 0:
        return U
    if m > 0:
        if not space.two_sided:
            raise ValueError("forward images of covers need an invertible (two-sided) shift")
        return Cover(tuple(CylinderSet(c.window_start - m, c.words) for c in U.members), U.is_partition)
    return Cover(tuple(preimage_set(space, c, -m) for c in U.members), U.is_partition)


# ---------------------------------------------------------------------------
# inverse limit and reflection

@dataclass(frozen=True)
class InverseLimit:
    """Natural extension of a one-sided SFT with the projection to coordinates >= 0."""

    base: ShiftSpace
    extension: ShiftSpace

    def point(self, x: PointRepr) -> PointRepr:
        """Project a two-sided point to the one-sided point of its coordinates ``>= 0``."""
        if not x.two_sided:
            raise ValueError("expected a two-sided point")
        r = x.phase % len(x.period)
        return PointRepr(x.period[r:] + x.period[:r])

    def lift_point(self, x: PointRepr) -> PointRepr:
        """A periodic two-sided point projecting to the purely periodic ``x``."""
        if x.preperiod:
            raise ValueError("only purely periodic points lift to periodic two-sided points")
        return PointRepr(x.period, phase=0, two_sided=True)

    def preimage(self, C: CylinderSet) -> CylinderSet:
        """``pi^-1 C``: the same window words read in the two-sided space."""
        return CylinderSet(C.window_start, C.words, C.tail)

    def image(self, K: CylinderSet) -> CylinderSet:
        """``pi(K)``, the set of one-sided restrictions of points of ``K``."""
        if K.is_empty:
            return empty_set(self.base)
        e = K.window_end
        if e <= 0:
            if K.tail is None:
                return full_set(self.base)
            return singleton(self.base, K.tail.shift(-e))
        return CylinderSet(0, materialize(self.extension, K, 0, e), K.tail)

    def cover_preimage(self, U: Cover) -> Cover:
        return Cover(tuple(self.preimage(c) for c in U.members), U.is_partition)


def inverse_limit(space: ShiftSpace) -> InverseLimit:
    if space.two_sided:
        raise ValueError("inverse limit is built from a one-sided space")
    ext = ShiftSpace(space.alphabet_size, space.adjacency, TWO_SIDED, space.metric_base)
    return InverseLimit(space, ext)


def reflect_space(space: ShiftSpace) -> ShiftSpace:
    """The two-sided space read backwards (``i -> -i``); its shift is ``T^-1``."""
    if not space.two_sided:
        raise ValueError("reflection needs a two-sided space")
    transposed = tuple(zip(*space.adjacency))
    return ShiftSpace(space.alphabet_size, transposed, TWO_SIDED, space.metric_base)


def reflect_set(space: ShiftSpace, K: CylinderSet) -> CylinderSet:
    """Image of a tail-free set under ``i -> -i``."""
    if K.tail is not None:
        raise ValueError("only tail-free sets reflect to cylinder sets")
    return CylinderSet(-(K.window_end - 1), unique_rows(K.words[:, ::-1]))


def reflect_point(x: PointRepr) -> PointRepr:
    p = len(x.period)
    # y_i = x_{-i} = period[(-i + phase) % p] = rev[(i - phase - 1) % p]
    return PointRepr(x.period[::-1], phase=-x.phase - 1, two_sided=True) if p else x
