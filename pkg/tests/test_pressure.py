import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import LOG2, LOG3, LOG_PHI
from presslab.bruteforce import brute_separated, brute_spanning
from presslab.potential import constant_potential, make_potential, reflect_potential, symbol_potential
from presslab.pressure import (
    EMPTY,
    assemble_estimate,
    bowen_pressure,
    cover_entropy,
    cover_pressure,
    cover_pressure_estimate,
    cover_pressure_exact,
    cover_pressure_terms,
    extrapolate,
    lower_cover_pressure,
    pressure_of_full_space,
    separated_count,
    separated_pressure,
    separation_window,
    spanning_count,
)
from presslab.symbolic import (
    ball_partition,
    cover_from_members,
    cylinder_partition,
    cylinder_set,
    empty_set,
    full_set,
    full_shift,
    golden_mean_shift,
    join_iterates,
    materialize,
    one_sided_point,
    preimage_set,
    reflect_set,
    reflect_space,
    singleton,
    word_cylinder,
    words_of_length,
)


def test_separation_windows():
    X, T = full_shift(2), full_shift(2, "two")
    assert separation_window(X, 3, 1) == (0, 3)
    assert separation_window(T, 3, 2) == (-1, 4)
    assert separation_window(T, 3, 2, backward=True) == (-3, 2)
    assert separation_window(T, 5, 0) == (0, 0)
    with pytest.raises(ValueError):
        separation_window(X, 3, 1, backward=True)


def test_separated_count_examples():
    X = full_shift(2)
    assert separated_count(X, full_set(X), 3, 1) == 8
    assert separated_count(X, full_set(X), 3, 1, method="brute") == 8
    assert separated_count(golden_mean_shift(), full_set(golden_mean_shift()), 3, 1) == 5
    assert separated_count(X, empty_set(X), 3, 1) == 0


def test_spanning_count_examples():
    X = full_shift(2)
    assert spanning_count(X, full_set(X), 3, 1) == 8
    assert spanning_count(X, word_cylinder(X, "0110"), 1, 3) == 1
    assert spanning_count(X, empty_set(X), 2, 1) == 0


def test_separated_pressure_examples():
    X = full_shift(2)
    f = symbol_potential(X, [0.0, LOG2])
    assert separated_pressure(X, f, full_set(X), 4, 1) == pytest.approx(math.log(81), abs=1e-12)
    x = one_sided_point("011")
    assert separated_pressure(X, f, singleton(X, x), 5, 2) == pytest.approx(3 * LOG2, abs=1e-12)
    assert separated_pressure(X, f, empty_set(X), 4, 1) is EMPTY
    zero = constant_potential(X)
    for n in range(1, 7):
        for q in range(4):
            assert separated_pressure(X, zero, full_set(X), n, q) == pytest.approx(
                math.log(separated_count(X, full_set(X), n, q)), abs=1e-12)


def test_cover_pressure_examples():
    X = full_shift(2)
    f = symbol_potential(X, [0.0, LOG2])
    U = cylinder_partition(X, 1)
    assert cover_pressure(X, f, U, full_set(X), 4) == pytest.approx(4 * LOG3, abs=1e-12)
    assert cover_pressure(X, f, U, empty_set(X), 4) is EMPTY
    G = golden_mean_shift()
    zero = constant_potential(G)
    V = cylinder_partition(G, 2)
    K = word_cylinder(G, "00")
    for n in range(1, 7):
        joined = join_iterates(G, V, n)
        meets = sum(1 for m in joined.members if len(materialize(G, m, 0, n + 1)) and
                    len(set(map(tuple, materialize(G, m, 0, n + 1).tolist())) &
                        set(map(tuple, materialize(G, K, 0, n + 1).tolist()))))
        assert cover_pressure(G, zero, V, K, n) == pytest.approx(math.log(meets), abs=1e-12)


def test_lower_cover_pressure_examples():
    X = full_shift(2)
    zero = constant_potential(X)
    U = cylinder_partition(X, 1)
    assert lower_cover_pressure(X, zero, U, full_set(X), 5) == cover_pressure(X, zero, U, full_set(X), 5)
    f = symbol_potential(X, [0.3, -0.2])
    assert lower_cover_pressure(X, f, U, full_set(X), 5) == pytest.approx(cover_pressure(X, f, U, full_set(X), 5))
    g = make_potential(X, 2, {"00": 0, "01": 1.0, "10": 0.5, "11": 2.0})
    lo, hi = lower_cover_pressure(X, g, U, full_set(X), 1), cover_pressure(X, g, U, full_set(X), 1)
    assert lo < hi
    # per-cell gap is at most the oscillation (here 2.0 on cell [1], 1.0 on cell [0])
    assert hi - lo <= 2.0


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_cover_pressure(space, f, U, K, n):
    """Minimum over all coarsenings of the generated partition, by explicit set partitions."""
    lo = min(m.window_start for m in U.members)
    L = max(m.window_end for m in U.members) - lo
    member_words = [set(map(tuple, materialize(space, m, lo, lo + L).tolist())) for m in U.members]
    width = L + n - 1
    depth = max(width, f.depth + n - 1)
    rows = [tuple(r) for r in materialize(space, K, 0, depth).tolist()]
    atoms = {}
    for r in rows:
        key = tuple(frozenset(j for j, ws in enumerate(member_words) if r[i:i + L] in ws) for i in range(n))
        val = sum(f.values[r[j:j + f.depth]] for j in range(n))
        atoms[key] = max(atoms.get(key, -math.inf), val)
    keys = list(atoms)
    best = math.inf
    for part in _set_partitions(keys):
        if all(all(frozenset.intersection(*[k[i] for k in block]) for i in range(n)) for block in part):
            best = min(best, sum(max(math.exp(atoms[k]) for k in block) for block in part))
    return math.log(best)


def test_cover_pressure_exact_examples():
    X = full_shift(2)
    zero = constant_potential(X)
    U = cylinder_partition(X, 1)
    assert cover_pressure_exact(X, zero, U, full_set(X), 3) == pytest.approx(cover_pressure(X, zero, U, full_set(X), 3))
    overlap = cover_from_members(X, [word_cylinder(X, "0"), full_set(X)])
    assert cover_pressure_exact(X, zero, overlap, full_set(X), 1) == 0.0
    assert cover_pressure_exact(X, zero, overlap, empty_set(X), 1) is EMPTY


@pytest.mark.parametrize("n", [1, 2])
def test_cover_pressure_exact_matches_set_partitions(n):
    X = full_shift(2)
    f = symbol_potential(X, [0.4, -0.3])
    covers = [
        cover_from_members(X, [word_cylinder(X, "0"), cylinder_set(X, 0, ["10", "00"]), word_cylinder(X, "1")]),
        cover_from_members(X, [cylinder_set(X, 0, ["00", "01", "10"]), cylinder_set(X, 0, ["01", "11"])]),
    ]
    for U in covers:
        for K in (full_set(X), word_cylinder(X, "01")):
            try:
                fast = cover_pressure_exact(X, f, U, K, n)
            except ValueError:
                continue
            assert fast == pytest.approx(brute_cover_pressure(X, f, U, K, n), abs=1e-12)


def test_cover_pressure_exact_agrees_on_partitions(one_sided):
    f = make_potential(one_sided, 2, {w: 0.7 * w[0] - 0.4 * w[1] for w in words_of_length(one_sided, 2)})
    U = cylinder_partition(one_sided, 1)
    for n in (1, 2, 3):
        assert cover_pressure_exact(one_sided, f, U, full_set(one_sided), n) == pytest.approx(
            cover_pressure(one_sided, f, U, full_set(one_sided), n), abs=1e-12)


def test_cover_entropy_examples():
    X = full_shift(2)
    ent = cover_entropy(X, cylinder_partition(X, 1), full_set(X), 6)
    assert all(h / n == pytest.approx(LOG2) for n, h in ent.values)
    G = golden_mean_shift()
    ent = cover_entropy(G, cylinder_partition(G, 1), full_set(G), 5)
    assert ent.values[4][1] == pytest.approx(math.log(13))
    fixed = cover_entropy(X, cylinder_partition(X, 1), singleton(X, one_sided_point("0")), 5)
    assert fixed.estimate == 0
    overlap = cover_from_members(X, [word_cylinder(X, "0"), full_set(X)])
    assert cover_entropy(X, overlap, full_set(X), 3).values[0][1] == 0.0


def test_extrapolate_affine():
    samples = [(n, 0.5 + 2.0 / n) for n in range(1, 17)]
    a, b, method = extrapolate(samples)
    assert method == "affine_fit" and a == pytest.approx(0.5) and b == pytest.approx(2.0)
    assert extrapolate([(1, 0.3)]) == (0.3, 0.0, "last_sample")
    with pytest.raises(ValueError):
        extrapolate([(2, 1.0), (2, 1.0)])


def test_estimate_flags_non_monotone():
    grid = {1: [(n, 1.0 + ((-1) ** n) / n) for n in range(1, 9)], 2: [(n, 0.5) for n in range(1, 9)]}
    est = assemble_estimate(grid, "q")
    assert not est.monotone
    assert any("not monotone" in note for note in est.notes)
    assert est.to_dict()["method"] == "affine_fit"


def test_bowen_pressure_examples():
    X = full_shift(2)
    zero = constant_potential(X)
    est = bowen_pressure(X, zero, full_set(X), 10, [1, 2, 3])
    for q, samples in est.grid:
        for n, v in samples:
            assert v == pytest.approx(LOG2 + (q - 1) * LOG2 / n, abs=1e-12)
    assert est.extrapolated == pytest.approx(LOG2, abs=1e-9)
    G = golden_mean_shift()
    assert bowen_pressure(G, constant_potential(G), full_set(G), 20).extrapolated == pytest.approx(LOG_PHI, abs=1e-5)
    f = symbol_potential(X, [-0.7, 1.1])
    fixed = bowen_pressure(X, f, singleton(X, one_sided_point("0")), 8)
    assert fixed.extrapolated == pytest.approx(-0.7, abs=1e-12)
    with pytest.raises(ValueError):
        bowen_pressure(X, f, full_set(X), 3)
    with pytest.raises(ValueError):
        bowen_pressure(X, f, full_set(X), 8, [2, 1])


@pytest.mark.parametrize("beta", [-1.0, 0.0, 1.0])
def test_full_space_pressure_matches_closed_forms(beta):
    G = golden_mean_shift()
    f = symbol_potential(G, [0.0, beta])
    # Perron root of [[1, 1], [e^beta, 0]]: lambda^2 = lambda + e^beta
    lam = (1 + math.sqrt(1 + 4 * math.exp(beta))) / 2
    assert pressure_of_full_space(G, f, 16).extrapolated == pytest.approx(math.log(lam), abs=1e-4)
    X = full_shift(2)
    assert pressure_of_full_space(X, symbol_potential(X, [0, LOG2])).extrapolated == pytest.approx(LOG3, abs=1e-9)


def test_monotonicity_in_delta_and_k(one_sided):
    f = make_potential(one_sided, 2, {w: 0.3 * w[0] - 0.9 * w[1] for w in words_of_length(one_sided, 2)})
    small = word_cylinder(one_sided, "01")
    big = cylinder_set(one_sided, 0, ["01", "00"])
    for n in range(1, 7):
        vals = [separated_pressure(one_sided, f, big, n, q) for q in range(5)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
        assert separated_pressure(one_sided, f, small, n, 2) <= separated_pressure(one_sided, f, big, n, 2) + 1e-12
    part = bowen_pressure(one_sided, f, small, 8)
    whole = bowen_pressure(one_sided, f, full_set(one_sided), 8)
    for (_, a), (_, b) in zip(part.samples, whole.samples):
        assert a <= b + 1e-12


@pytest.mark.parametrize("q", [0, 1, 2])
def test_fast_path_matches_brute_force(q):
    for space in (full_shift(2), golden_mean_shift(), full_shift(2, "two"), golden_mean_shift("two")):
        f = make_potential(space, 2, {w: 0.3 * w[0] - 0.7 * w[1] + 0.1 * w[0] * w[1] for w in words_of_length(space, 2)})
        for K in (full_set(space), word_cylinder(space, "0"), cylinder_set(space, 1 if space.two_sided else 0, ["00", "10"])):
            for n in (1, 2, 4):
                count, log_sum = brute_separated(space, f, K, n, q)
                assert count == separated_count(space, K, n, q)
                assert log_sum == pytest.approx(separated_pressure(space, f, K, n, q), abs=1e-9)
                assert brute_spanning(space, K, n, q) == spanning_count(space, K, n, q)


@pytest.mark.parametrize("q", [1, 2])
def test_backward_pressure_matches_reflection(two_sided, q):
    R = reflect_space(two_sided)
    f = make_potential(two_sided, 2, {w: 0.6 * w[0] - 0.2 * w[1] for w in words_of_length(two_sided, 2)})
    h = reflect_potential(f, R)
    K = cylinder_set(two_sided, 2, ["00", "01"])
    RK = reflect_set(two_sided, K)
    for n in range(1, 8):
        assert separated_pressure(two_sided, f, K, n, q, backward=True) == pytest.approx(
            separated_pressure(R, h, RK, n, q), abs=1e-12)


def test_sup_over_covers_agrees_with_separated(one_sided):
    f = symbol_potential(one_sided, [0.2, -0.5])
    sep = bowen_pressure(one_sided, f, full_set(one_sided), 14)
    cov = cover_pressure_estimate(one_sided, f, full_set(one_sided), [1, 2, 3], 14)
    assert sep.extrapolated == pytest.approx(cov.extrapolated, abs=1e-3)


@given(st.data())
def test_null_potential_collapse(data):
    space = data.draw(st.sampled_from([full_shift(2), golden_mean_shift(), full_shift(2, "two"), golden_mean_shift("two")]))
    zero = constant_potential(space)
    n, q = data.draw(st.integers(1, 7)), data.draw(st.integers(0, 3))
    words = words_of_length(space, 2)
    chosen = data.draw(st.lists(st.sampled_from(words), min_size=1, max_size=3))
    K = cylinder_set(space, 0, chosen)
    assert separated_pressure(space, zero, K, n, q) == pytest.approx(math.log(separated_count(space, K, n, q)), abs=1e-12)
    if q:
        U = ball_partition(space, q)
        terms = cover_pressure_terms(space, zero, U, K, n)
        assert cover_pressure(space, zero, U, K, n) == pytest.approx(math.log(len(terms)), abs=1e-12)
        assert math.exp(cover_pressure(space, zero, U, K, n)) == pytest.approx(
            math.exp(cover_entropy(space, U, K, max(n, 2)).values[n - 1][1]))
