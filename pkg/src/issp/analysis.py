"""Knapsack reformulation, greedy subset filling, and polynomial special cases.

The problem of choosing x_i in {0} union [lo_i, hi_i] maximizing sum(x) <= T
is equivalent to a 0-1 knapsack with weights lo_i, profits hi_i, capacity T,
under the clipped objective min(sum of chosen hi, T): any subset S whose
lower endpoints fit (sum lo <= T) can be turned into a feasible solution of
value exactly min(sum of S's hi, T) by a greedy fill.

Two sufficient conditions make the problem solvable in polynomial time:

* a "large target" condition
      T >= ceil(max lo / min(hi - lo)) * max lo
  which guarantees some prefix reaches the target exactly, and
* a "wide intervals" condition  min(hi_i / lo_i) >= 2  (whenever T does not
  exceed the sum of upper endpoints), under which upper endpoints cover the
  whole range above the largest interval.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .core import (
    Instance,
    Solution,
    SolveOutcome,
    scatter_solution,
    validate,
)
from .errors import DegenerateLength, IsspError, SubsetInfeasible


@dataclass(frozen=True)
class KnapsackInstance:
    """0-1 knapsack view: weights = lo, profits = hi, capacity = T."""

    weights: tuple[int, ...]
    profits: tuple[int, ...]
    capacity: int


def to_knapsack(inst: Instance) -> KnapsackInstance:
    """Export the instance as a 0-1 knapsack.

    The value map: the interval problem's optimum equals the maximum over
    subsets S with sum(weights[S]) <= capacity of min(sum(profits[S]), capacity).
    """
    return KnapsackInstance(
        weights=tuple(iv.lo for iv in inst.intervals),
        profits=tuple(iv.hi for iv in inst.intervals),
        capacity=inst.target,
    )


def fill_values(intervals, subset: list[int], target: int) -> dict[int, int]:
    """Greedy fill of a feasible subset, achieving min(sum hi, T).

    ``subset`` lists positions into ``intervals`` in fill order.  Members are
    pushed to their upper endpoints one by one until the target would be
    crossed; the member that crosses it takes an intermediate value so the
    total lands exactly on the target.  At most that single member ends up
    strictly inside its interval.
    """
    lo_sum = sum(intervals[i].lo for i in subset)
    if lo_sum > target:
        raise SubsetInfeasible(f"subset lower endpoints sum to {lo_sum} > target {target}")
    values = {i: intervals[i].lo for i in subset}
    v = lo_sum
    for i in subset:
        if v >= target:
            break
        room = target - v
        step = intervals[i].hi - intervals[i].lo
        take = min(step, room)
        values[i] = intervals[i].lo + take
        v += take
    return values


def solution_from_subset(inst: Instance, subset: Iterable[int]) -> Solution:
    """Build a feasible solution of value min(sum hi over subset, T).

    ``subset`` holds 0-based positions into ``inst.intervals``; the fill
    proceeds in ascending position order.  The returned solution is in
    original input order.
    """
    sub = sorted(set(subset))
    values = fill_values(inst.intervals, sub, inst.target)
    current = [values.get(i, 0) for i in range(inst.n)]
    return scatter_solution(inst, current)


def min_interval_length(inst: Instance) -> Optional[int]:
    if inst.is_empty:
        return None
    return min(iv.length for iv in inst.intervals)


def check_theorem2(inst: Instance) -> bool:
    """Test the large-target condition T >= ceil(max lo / min len) * max lo.

    Instances containing a zero-length interval make the condition
    undefined (division by zero); they are classified False with a
    DegenerateLength warning.
    """
    if inst.is_empty:
        return False
    min_len = min_interval_length(inst)
    if min_len == 0:
        warnings.warn(
            "zero-length interval: large-target condition undefined",
            DegenerateLength,
            stacklevel=2,
        )
        return False
    max_lo = max(iv.lo for iv in inst.intervals)
    bound = -(-max_lo // min_len) * max_lo
    return inst.target >= bound


def check_wide(inst: Instance) -> Optional[Fraction]:
    """Return c* = min over intervals of hi/lo as an exact rational."""
    if inst.is_empty:
        return None
    return min(Fraction(iv.hi, iv.lo) for iv in inst.intervals)


def polynomial_rate_monte_carlo(
    n: int, c: Fraction, trials: int, seed: int
) -> Fraction:
    """Empirical probability that a random instance is polynomially solvable.

    Draws interval sets with hi uniform in [1, 10**14] and lo = max(1,
    floor(hi/c)), samples the target uniformly from (max hi, sum hi], and
    reports the fraction of trials on which a polynomial route applies.
    For c >= 2 the rate should be essentially 1; for smaller ratios the
    theoretical comparison bound is min(1, 2*(1 - 1/c)), though conditioning
    on targets above max hi can push the empirical rate below it.
    """
    from .instgen import HI_RANGE, SplitMix64  # deferred: instgen is a sibling

    c = Fraction(c)
    rng = SplitMix64(seed)
    hits = 0
    for _ in range(trials):
        pairs = []
        for _ in range(n):
            hi = rng.randint(HI_RANGE)
            pairs.append((max(1, hi * c.denominator // c.numerator), hi))
        max_hi = max(hi for _, hi in pairs)
        hi_sum = sum(hi for _, hi in pairs)
        if hi_sum <= max_hi + 1:
            t = max_hi + 1
        else:
            t = max_hi + rng.randint(hi_sum - max_hi)
        inst = validate(pairs, t)
        if solve_polynomial(inst) is not None:
            hits += 1
    return Fraction(hits, trials)


def solve_polynomial(inst: Instance) -> Optional[SolveOutcome]:
    """Try the polynomial-time routes; return an exact outcome or None.

    Routes, in order:
      (a) T >= sum of all lower endpoints: switch everything on and fill;
          value = min(sum hi, T).
      (b) large-target condition holds: some prefix's lower endpoints fit
          while its upper endpoints cover T; fill the prefix to value T.
      (c) c* >= 2 and T <= sum hi: put the max-hi interval first, take the
          minimal prefix whose upper endpoints cover T; its lower endpoints
          are guaranteed to fit; fill to value T.

    The instance must already satisfy T > max hi (run preprocess first).
    """
    start = time.perf_counter()
    t = inst.target
    if inst.is_empty:
        return None

    def outcome(sol: Solution, route: str) -> SolveOutcome:
        return SolveOutcome(
            solution=sol,
            value=sol.total,
            kind="exact",
            stats={"route": route, "elapsed": time.perf_counter() - start},
        )

    lo_total = sum(iv.lo for iv in inst.intervals)
    if t >= lo_total:
        return outcome(solution_from_subset(inst, range(inst.n)), "a")

    with warnings.catch_warnings():
        # routing is not classification; keep the degenerate-length
        # diagnostic for explicit check_theorem2 callers only
        warnings.simplefilter("ignore", DegenerateLength)
        large_target = check_theorem2(inst)
    if large_target:
        # lo_total > t here, so a proper prefix crosses t: take the longest
        # prefix whose lower endpoints still fit.
        acc = 0
        prefix_end = 0
        for i, iv in enumerate(inst.intervals):
            if acc + iv.lo > t:
                break
            acc += iv.lo
            prefix_end = i + 1
        prefix = list(range(prefix_end))
        hi_sum = sum(inst.intervals[i].hi for i in prefix)
        if hi_sum < t:
            raise IsspError(
                "large-target route: prefix upper endpoints do not cover the "
                "target; the route's guarantee is violated, indicating a bug"
            )
        return outcome(solution_from_subset(inst, prefix), "b")

    cstar = check_wide(inst)
    hi_total = sum(iv.hi for iv in inst.intervals)
    if cstar is not None and cstar >= 2 and t <= hi_total:
        order = sorted(range(inst.n), key=lambda i: -inst.intervals[i].hi)
        # minimal prefix (max-hi interval first) whose upper endpoints cover t
        acc = 0
        chosen: list[int] = []
        for i in order:
            chosen.append(i)
            acc += inst.intervals[i].hi
            if acc >= t:
                break
        lo_sum = sum(inst.intervals[i].lo for i in chosen)
        if lo_sum > t:
            raise IsspError(
                "wide-interval route: minimal covering prefix is infeasible; "
                "the route's guarantee is violated, indicating a bug"
            )
        values = fill_values(inst.intervals, chosen, t)
        current = [values.get(i, 0) for i in range(inst.n)]
        return outcome(scatter_solution(inst, current), "c")

    return None
