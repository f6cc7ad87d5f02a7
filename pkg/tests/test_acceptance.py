"""End-to-end acceptance checks.

Each test covers one release criterion: golden traces of the two solvers on
the worked four-interval example, bulk oracle equivalence, the approximation
guarantee with its exactness side-condition, reference error rates for the
benchmark families, a 100,000-interval scale run with the space meter,
the polynomial subclasses, and the knapsack-equivalence value map.
"""

import time
from fractions import Fraction

from issp.analysis import (
    polynomial_rate_monte_carlo,
    solve_polynomial,
    to_knapsack,
)
from issp.core import (
    ImmediateSolution,
    ReducedInstance,
    evaluate,
    midrange_count,
    preprocess,
    relative_error,
    sort_by_length,
    validate,
)
from issp.exact import brute_force_optimum, dp_exact, ssp_optimum_mitm
from issp.fptas import fptas_solve
from issp.instgen import SplitMix64, gen_a, gen_b, gen_c, instance_b_optimum

from conftest import random_instance

GOLDEN_PAIRS = [(10, 20), (10, 25), (60, 85), (20, 50)]
GOLDEN_T = 100


def _reduced(inst):
    """Preprocess; return (resolved_value, None) or (None, work_instance)."""
    pre = preprocess(inst)
    if isinstance(pre, ImmediateSolution):
        return pre.solution.total, None
    if pre.is_empty:
        return 0, None
    return None, sort_by_length(pre.instance)


def test_criterion_01_exact_solver_golden_trace():
    start = time.perf_counter()
    inst = sort_by_length(validate(GOLDEN_PAIRS, GOLDEN_T))
    out = dp_exact(inst, trace=True)
    assert out.stats["sets"][0] == (10, 20)
    assert out.stats["sets"][1] == (10, 20, 25, 30, 35, 45)
    assert out.stats["early_exit_at"] == 3
    assert out.midrange_index == 3
    assert out.value == 100
    assert out.solution.values == (10, 25, 65, 0)
    assert time.perf_counter() - start < 0.010


def test_criterion_02_approximation_golden_trace():
    start = time.perf_counter()
    inst = sort_by_length(validate(GOLDEN_PAIRS, GOLDEN_T))
    out = fptas_solve(inst, Fraction(1, 5), trace=True)
    neg1, pos1 = out.stats["scan_trace"][0]
    assert (neg1[1], pos1[1]) == (10, 20)
    assert all(v == 0 for v in neg1[2:] + pos1[2:])
    neg2, pos2 = out.stats["scan_trace"][1]
    assert (neg2[1], pos2[1]) == (10, 20)
    assert (neg2[2], pos2[2]) == (25, 35)
    assert (neg2[3], pos2[3]) == (45, 45)
    assert all(v == 0 for v in neg2[4:] + pos2[4:])
    assert out.stats["dc_target"] == 40
    assert out.value == 100
    assert out.solution.values == (0, 25, 75, 0)
    assert time.perf_counter() - start < 0.010


def test_criterion_03_exact_solver_oracle_equivalence_10k():
    start = time.perf_counter()
    rng = SplitMix64(2024)
    checked = 0
    while checked < 10_000:
        inst = random_instance(rng, max_n=12, max_end=60, max_t=300)
        resolved, work = _reduced(inst)
        if work is None:
            continue
        assert dp_exact(work).value == brute_force_optimum(work).value
        checked += 1
    assert time.perf_counter() - start < 60


def test_criterion_04_and_05_guarantee_sweep_with_exactness():
    start = time.perf_counter()
    rng = SplitMix64(777)
    epsilons = [Fraction(3, 10), Fraction(1, 10), Fraction(1, 100)]
    checked = 0
    exact_flagged = 0
    while checked < 5_000:
        inst = random_instance(rng, max_n=20, max_end=100, max_t=500)
        resolved, work = _reduced(inst)
        if work is None:
            continue
        opt = dp_exact(work).value
        for eps in epsilons:
            out = fptas_solve(work, eps)
            assert evaluate(inst, out.solution) == out.value
            assert midrange_count(inst, out.solution) <= 1
            assert out.value >= (1 - eps) * opt
            # whenever the scan observed the tight reconstruction window,
            # the answer must be exactly optimal
            if out.stats["case_a"] or out.kind == "exact":
                assert out.value == opt
                exact_flagged += 1
        checked += 1
    assert exact_flagged > 0
    assert time.perf_counter() - start < 120


def test_criterion_06_family_a_error_table():
    start = time.perf_counter()
    for n in (10, 15, 20, 25, 30, 35):
        inst = gen_a(n)
        resolved, work = _reduced(inst)
        reference = resolved if work is None else ssp_optimum_mitm(work)
        for eps in (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
            if work is None:
                err = relative_error(resolved, reference)
            else:
                out = fptas_solve(work, eps)
                err = relative_error(out.value, reference)
            assert err <= eps
            if eps == Fraction(1, 1000):
                assert err == 0
    assert time.perf_counter() - start < 5


def test_criterion_07_family_b_error_table():
    start = time.perf_counter()
    eps = Fraction(1, 1000)
    for n in (10, 50, 100, 500):
        inst = gen_b(n)
        resolved, work = _reduced(inst)
        reference = instance_b_optimum(n)
        if work is None:
            value = resolved
        else:
            value = fptas_solve(work, eps).value
        err = relative_error(value, reference)
        assert err <= eps
        if n <= 100:
            assert err == 0
    assert time.perf_counter() - start < 30


def test_criterion_08_scale_run_and_space_meter():
    n = 100_000
    inst = gen_c(n, Fraction(3, 2), seed=1)
    resolved, work = _reduced(inst)
    assert work is not None
    eps = Fraction(1, 1000)
    start = time.perf_counter()
    out = fptas_solve(work, eps)
    elapsed = time.perf_counter() - start
    assert elapsed <= 10
    assert relative_error(out.value, inst.target) <= eps
    assert evaluate(inst, out.solution) == out.value

    # live slot count depends only on 1/eps: scaling the target by 10
    # must leave the peak unchanged
    big = validate(
        [(iv.lo, iv.hi) for iv in inst.intervals], inst.target * 10
    )
    resolved_b, work_b = _reduced(big)
    out_b = fptas_solve(work_b, eps)
    assert out_b.stats["peak_slots"] == out.stats["peak_slots"]


def test_criterion_09_polynomial_subclasses():
    start = time.perf_counter()
    rng = SplitMix64(4242)
    checked = 0
    while checked < 2_000:
        inst = random_instance(rng, max_n=18, max_end=50, max_t=400)
        resolved, work = _reduced(inst)
        if work is None:
            continue
        out = solve_polynomial(work)
        if out is None:
            continue
        assert out.kind == "exact"
        assert evaluate(inst, out.solution) == out.value
        assert out.value == brute_force_optimum(work).value
        checked += 1
    # width-ratio 2 families must be solvable essentially always when the
    # target is drawn above the largest upper endpoint
    rate = polynomial_rate_monte_carlo(12, Fraction(2), trials=400, seed=9)
    assert rate >= Fraction(99, 100)
    assert time.perf_counter() - start < 60


def test_criterion_10_knapsack_value_map_equivalence():
    start = time.perf_counter()
    rng = SplitMix64(31337)
    for _ in range(400):
        inst = random_instance(rng, max_n=15, max_end=40, max_t=250)
        kp = to_knapsack(inst)
        n = len(kp.weights)
        best = 0
        for mask in range(1 << n):
            w = p = 0
            for i in range(n):
                if mask >> i & 1:
                    w += kp.weights[i]
                    p += kp.profits[i]
            if w <= kp.capacity:
                best = max(best, min(p, kp.capacity))
        assert best == brute_force_optimum(inst).value
    assert time.perf_counter() - start < 30
