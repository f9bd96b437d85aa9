"""One test per acceptance criterion; each records a PASS/FAIL line in the terminal summary."""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import LOG2, LOG3
from presslab.bruteforce import brute_separated, preimage_points
from presslab.experiments import run_experiment
from presslab.oracle import (
    bernoulli_measure,
    equilibrium_markov,
    measure_pressure,
    random_markov_measure,
    transfer_pressure,
)
from presslab.potential import constant_potential, make_potential, symbol_potential
from presslab.pressure import bowen_pressure, separated_count, separated_pressure
from presslab.stable import (
    dispersal_rate,
    epsilon_stable_set,
    pressure_point_scan,
    preimage_pressure,
    scan_points,
    stable_cylinder_pressure_backward,
)
from presslab.symbolic import (
    cylinder_set,
    full_set,
    full_shift,
    golden_mean_shift,
    preimage_set,
    singleton,
    word_cylinder,
    words_of_length,
)

TOL = 0.02
BERNOULLI_P = [round(0.1 * k, 1) for k in range(1, 10)]


def measure_values(space, f):
    values = {f"bernoulli({p})": measure_pressure(space, bernoulli_measure(space, [1 - p, p]), f) for p in BERNOULLI_P}
    values["equilibrium"] = measure_pressure(space, equilibrium_markov(space, f), f)
    return values


def test_criterion_1_main_equality(acceptance):
    X = full_shift(2)
    f = symbol_potential(X, [0.0, LOG2])
    start = time.perf_counter()
    scan = pressure_point_scan(X, f, scan_points(X, 8), 1, TOL, n_max=16)
    elapsed = time.perf_counter() - start
    gap = scan.sup_estimate - LOG3
    ok = len(scan.entries) == 8 and abs(gap) <= TOL and elapsed < 10.0
    acceptance(1, "sup_x P_s(T,f,x,1/2) = log 3 on the full 2-shift", ok, f"gap={gap:.2e}, runtime={elapsed:.2f}s")
    assert ok


def test_criterion_2_entropy_specialization(acceptance):
    X = full_shift(2)
    rates = [dispersal_rate(X, x, 1, n_max=16).extrapolated for x in scan_points(X, 8)]
    worst = max(abs(r - LOG2) for r in rates)
    G = golden_mean_shift()
    h_top = bowen_pressure(G, constant_potential(G), full_set(G), n_max=20).extrapolated
    ok = worst <= 1e-9 and abs(h_top - 0.481212) <= 0.01
    acceptance(2, "dispersal rate log 2 and golden-mean entropy", ok, f"|h_s-log2|={worst:.1e}, h_top={h_top:.6f}")
    assert ok


def test_criterion_3_typical_points(acceptance):
    T = full_shift(2, "two")
    f = symbol_potential(T, [0.0, LOG2])
    values = measure_values(T, f)
    estimates = {x.describe(): preimage_pressure(T, f, x, 1, n_max=16).extrapolated for x in scan_points(T, 8)}
    bad = [(p, m) for p, est in estimates.items() for m, pm in values.items() if est < pm - TOL]
    eq_gap = max(estimates.values()) - values["equilibrium"]
    ok = not bad and abs(eq_gap) <= TOL
    acceptance(3, "P_s >= P_mu over the Bernoulli grid, tight at equilibrium", ok,
               f"violations={len(bad)}, equilibrium gap={eq_gap:.2e}")
    assert ok


def test_criterion_4_backward_stable_cylinder(acceptance):
    T = full_shift(2, "two")
    f = symbol_potential(T, [0.0, LOG2])
    values = measure_values(T, f)
    m = 2
    diam_bad, low = [], []
    for x in scan_points(T, 4):
        rep = stable_cylinder_pressure_backward(T, f, x, m, n_max=16)
        # stated formula: diam(T^n A(x)) = 2^-(m+n-1)
        diam_bad += [(x.describe(), n, d) for n, d in rep.diameters if d != Fraction(1, 2 ** (m + n - 1))]
        low += [(x.describe(), k) for k, pm in values.items() if rep.estimate.extrapolated < pm - TOL]
    ok = not diam_bad and not low
    detail = f"diameter mismatches={len(diam_bad)}, pressure violations={len(low)}"
    if diam_bad:
        x, n, d = diam_bad[0]
        detail += f"; e.g. n={n} measured {d}, stated {Fraction(1, 2 ** (m + n - 1))}"
    acceptance(4, "backward pressure of stable cylinders and diam(T^n A) = 2^-(m+n-1)", ok, detail)
    assert not low
    assert not diam_bad, detail


def test_criterion_5_inverse_limit(acceptance):
    out = run_experiment({"experiment": "inverse-limit", "n_max": 8, "q_list": [1, 2]})
    bad = [c for c in out.exact if not c["passed"]]
    ns = {int(c["name"].rsplit("n=", 1)[1]) for c in out.exact}
    ok = not bad and ns == set(range(1, 9)) and len(out.exact) > 0
    acceptance(5, "exact cover pressure through the natural-extension projection", ok,
               f"{len(out.exact)} exact comparisons, {len(bad)} mismatches")
    assert ok


def test_criterion_6_sandwich(acceptance):
    out = run_experiment({"experiment": "lemma-3-1", "n_max": 10, "q_list": [1, 2, 3]})
    summary = out.exact[-1]
    ok = out.passed and summary["violations"] == 0
    acceptance(6, "separated/cover pressure sandwich", ok,
               f"{summary['comparisons']} comparisons, {summary['violations']} violations")
    assert ok


def test_criterion_7_subadditivity(acceptance):
    out = run_experiment({"experiment": "subadditivity", "n_max": 6})
    totals = {c["name"]: (c["comparisons"], c["violations"]) for c in out.exact if "comparisons" in c}
    ok = out.passed and len(totals) == 4 and all(v == 0 for _, v in totals.values())
    acceptance(7, "subadditivity and conjugation suites", ok,
               ", ".join(f"{k.split(':')[0]} {c}/{v}" for k, (c, v) in sorted(totals.items())))
    assert ok


def test_criterion_8_oracle_consistency(acceptance):
    rng = np.random.default_rng(2024)
    violations, worst_eq, checked = 0, 0.0, 0
    for space in (full_shift(2), golden_mean_shift()):
        for beta in (0.0, LOG2, -LOG2):
            f = symbol_potential(space, [0.0, beta])
            top = transfer_pressure(space, f)
            for _ in range(50):
                checked += 1
                violations += measure_pressure(space, random_markov_measure(space, rng), f) > top + 1e-9
            worst_eq = max(worst_eq, abs(measure_pressure(space, equilibrium_markov(space, f), f) - top))
    ok = violations == 0 and worst_eq <= 1e-9
    acceptance(8, "variational inequality and equilibrium tightness", ok,
               f"{checked} measures, {violations} violations, equilibrium gap={worst_eq:.1e}")
    assert ok


def brute_cases():
    for space in (full_shift(2), golden_mean_shift(), full_shift(2, "two"), golden_mean_shift("two")):
        f = make_potential(space, 2, {w: 0.4 * w[0] - 0.9 * w[1] + 0.2 * w[0] * w[1] for w in words_of_length(space, 2)})
        start = 1 if space.two_sided else 0
        sets = [full_set(space), word_cylinder(space, "1"), cylinder_set(space, start, ["00", "01"])]
        yield space, f, sets


def test_criterion_9_brute_force(acceptance):
    count_bad = sum_bad = pre_bad = cases = 0
    worst = 0.0
    for space, f, sets in brute_cases():
        for K in sets:
            for q in (1, 2):
                for n in range(1, 9):
                    cases += 1
                    count, log_sum = brute_separated(space, f, K, n, q)
                    count_bad += count != separated_count(space, K, n, q)
                    err = abs(log_sum - separated_pressure(space, f, K, n, q))
                    worst = max(worst, err)
                    sum_bad += err > 1e-9
        if not space.two_sided:
            for x in scan_points(space, 4):
                for n in range(1, 9):
                    pre = preimage_set(space, singleton(space, x), n)
                    pre_bad += len(pre.words) != len(preimage_points(space, x, n))
                    pre_bad += len(preimage_set(space, epsilon_stable_set(space, x, 1), n).words) != len(pre.words)
    ok = count_bad == sum_bad == pre_bad == 0
    acceptance(9, "fast paths match exhaustive enumeration", ok,
               f"{cases} separated cases, count/sum/preimage mismatches {count_bad}/{sum_bad}/{pre_bad}, "
               f"max log-sum error {worst:.1e}")
    assert ok


@pytest.mark.parametrize("name", ["main-equality", "theorem-3-7", "pressure-points", "topological-pressure",
                                  "oracle-consistency"])
def test_default_experiments_pass(name):
    assert run_experiment({"experiment": name}).passed
