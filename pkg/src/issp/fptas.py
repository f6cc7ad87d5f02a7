"""A space-efficient (1 - eps)-approximation scheme with solution recovery.

The driver partitions (0, T] into l = ceil(1/eps) equal buckets of width
T/l (<= eps*T) and streams over the length-sorted intervals keeping only
the smallest and largest reachable endpoint-sum seen in each bucket.  The
scan locates the single interval m that may take a strictly interior value
and the best partial sum ``delta_hat`` reachable from the intervals before
m.  Because bucket slots can be displaced by later items, a stored value's
predecessor chain may no longer be present, so plain backtracking cannot
reconstruct a solution; reconstruction instead recursively splits the item
set in two, recomputes the relaxed arrays per half, picks a compatible pair
(u1, u2) of half-sums, and backtracks greedily with provenance indices,
removing every touched suffix so no item is ever used twice.

All threshold comparisons involving eps*T are carried out in exact rational
arithmetic (eps is a Fraction); no floating point enters the solver path.
The live bucket-slot count is metered: arrays are sized by 1/eps only and
recycled on recursion unwind, so peak space is O(1/eps) regardless of T.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_right, insort
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import Instance, SolveOutcome, scatter_solution, sort_by_length
from .errors import EmptyArray, EpsilonOutOfRange, IsspError, NoPairFound, OutOfRange

Number = Union[int, Fraction]

# Item = (position in the length-sorted instance, lo, hi)
Item = tuple[int, int, int]


class SlotMeter:
    """Counts live bucket slots; the peak certifies the space bound."""

    def __init__(self) -> None:
        self.current = 0
        self.peak = 0

    def alloc(self, slots: int) -> None:
        self.current += slots
        if self.current > self.peak:
            self.peak = self.current

    def free(self, slots: int) -> None:
        self.current -= slots


@dataclass
class FptasParams:
    """Shared solve-wide constants: eps as an exact rational, T, l buckets."""

    epsilon: Fraction
    target: int
    l: int = 0
    meter: SlotMeter = field(default_factory=SlotMeter)

    def __post_init__(self) -> None:
        if not (0 < self.epsilon < 1):
            raise EpsilonOutOfRange(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.l == 0:
            p, q = self.epsilon.numerator, self.epsilon.denominator
            self.l = -(-q // p)  # ceil(1/eps)

    @property
    def width(self) -> Fraction:
        """Bucket width T/l; at most eps*T."""
        return Fraction(self.target, self.l)

    @property
    def eps_t(self) -> Fraction:
        return self.epsilon * self.target

    def bucket_index(self, v: int) -> int:
        """1-based bucket of v in the partition of (0, T]: ceil(v*l/T)."""
        if not (0 < v <= self.target):
            raise OutOfRange(f"value {v} outside (0, {self.target}]")
        return -(-v * self.l // self.target)


def bucket_index(v: int, params: FptasParams) -> int:
    return params.bucket_index(v)


class BucketArray:
    """Per-bucket min/max reachable sums with provenance.

    ``neg``/``pos`` hold the smallest/largest value seen in each bucket
    (0 = empty); ``*_d1``/``*_d2`` record the position and endpoint
    selector (1 = lo, 2 = hi) of the last item that produced the value.
    Arrays are always allocated at the full l buckets so the metered slot
    count depends only on eps, but only the first ``l_used`` buckets
    (enough to cover the local target) ever hold values.
    """

    def __init__(self, params: FptasParams, local_target: Number):
        self.params = params
        self.local_target = local_target
        self.tfloor = min(math.floor(local_target), params.target)
        self.l_used = min(params.l, max(1, -(-self.tfloor * params.l // params.target)))
        l = params.l
        self.neg = [0] * (l + 1)  # 1-based
        self.pos = [0] * (l + 1)
        self.neg_d1 = [0] * (l + 1)
        self.neg_d2 = [0] * (l + 1)
        self.pos_d1 = [0] * (l + 1)
        self.pos_d2 = [0] * (l + 1)
        self.nonempty: list[int] = []  # sorted bucket indices with values
        self._slots = 2 * l
        params.meter.alloc(self._slots)
        self._released = False

    def release(self) -> None:
        if not self._released:
            self.params.meter.free(self._slots)
            self._released = True

    def values(self) -> list[int]:
        out = []
        for k in self.nonempty:
            out.append(self.neg[k])
            if self.pos[k] != self.neg[k]:
                out.append(self.pos[k])
        return out

    def max_value_le(self, bound: int) -> int:
        """Largest stored value <= bound, or 0 if none."""
        if bound <= 0 or not self.nonempty:
            return 0
        kb = min(self.params.bucket_index(min(bound, self.params.target)), self.params.l)
        i = bisect_right(self.nonempty, kb) - 1
        if i < 0:
            return 0
        k = self.nonempty[i]
        if k == kb:
            if self.pos[k] <= bound:
                return self.pos[k]
            if self.neg[k] <= bound:
                return self.neg[k]
            if i == 0:
                return 0
            k = self.nonempty[i - 1]
        return self.pos[k]

    def insert(self, v: int, d1: int, d2: int) -> None:
        """Record value v produced by endpoint d2 of item d1."""
        k = self.params.bucket_index(v)
        if self.neg[k] == 0:
            insort(self.nonempty, k)
            self.neg[k] = self.pos[k] = v
            self.neg_d1[k] = self.pos_d1[k] = d1
            self.neg_d2[k] = self.pos_d2[k] = d2
            return
        if v < self.neg[k]:
            self.neg[k] = v
            self.neg_d1[k] = d1
            self.neg_d2[k] = d2
        if v > self.pos[k]:
            self.pos[k] = v
            self.pos_d1[k] = d1
            self.pos_d2[k] = d2

    def slot_for(self, v: int) -> tuple[int, int]:
        """(d1, d2) of the slot currently holding value v."""
        k = self.params.bucket_index(v)
        if self.pos[k] == v:
            return self.pos_d1[k], self.pos_d2[k]
        if self.neg[k] == v:
            return self.neg_d1[k], self.neg_d2[k]
        raise IsspError(f"value {v} is not stored in its bucket (caller bug)")


def relaxed_dp(items: list[Item], local_target: Number, params: FptasParams) -> BucketArray:
    """Stream the items, keeping min/max reachable sums per bucket.

    For each item both endpoints extend a snapshot of the current arrays
    (so an item never combines with itself), plus the endpoints alone;
    every resulting value in (0, local_target] updates its bucket's slots.
    """
    b = BucketArray(params, local_target)
    tf = b.tfloor
    for idx, lo, hi in items:
        base = b.values()
        for j, a in ((1, lo), (2, hi)):
            if a <= tf:
                b.insert(a, idx, j)
            for v in base:
                c = v + a
                if c <= tf:
                    b.insert(c, idx, j)
    return b


def find_u1_u2(
    b1: BucketArray, b2: BucketArray, local_target: Number, params: FptasParams
) -> tuple[int, int]:
    """Pick u1 from b1's values (or 0) and u2 from b2's (or 0) with
    local_target - eps*T <= u1 + u2 <= local_target, by an ascending-u1 /
    descending-u2 sweep over the sorted value lists."""
    lob = math.ceil(local_target - params.eps_t)
    upb = math.floor(local_target)
    vals1 = sorted(set([0] + b1.values()))
    vals2 = sorted(set([0] + b2.values()))
    i, j = 0, len(vals2) - 1
    while True:
        s = vals1[i] + vals2[j]
        if lob <= s <= upb:
            return vals1[i], vals2[j]
        if s < lob:
            i += 1
            if i >= len(vals1):
                raise NoPairFound("sweep exhausted ascending side")
        else:
            j -= 1
            if j < 0:
                raise NoPairFound("sweep exhausted descending side")


def backtrack(
    b: BucketArray,
    items: list[Item],
    local_target: Number,
    params: FptasParams,
) -> tuple[int, set[int], dict[int, int]]:
    """Greedy provenance walk from the best stored value <= local_target.

    Each step fixes one item at the recorded endpoint and removes every
    item at or after it from further consideration.  The walk continues
    through older slots only while the accumulated value stays admissible
    (within eps*T below the target, never above it); otherwise it stops,
    leaving the remainder to a recursive split.  Returns the accumulated
    value y, the removed positions, and the endpoint assignments.
    """
    tf = math.floor(local_target)
    tlow = math.ceil(local_target - params.eps_t)
    u = 0
    for v in b.values():
        if v <= tf and v > u:
            u = v
    if u == 0:
        raise EmptyArray("no stored value at or below the target")
    item_map = {idx: (lo, hi) for idx, lo, hi in items}
    removed: set[int] = set()
    assignments: dict[int, int] = {}
    y = 0
    while True:
        d1, d2 = b.slot_for(u)
        lo, hi = item_map[d1]
        a = lo if d2 == 1 else hi
        assignments[d1] = a
        removed.update(k for k in item_map if k >= d1)
        y += a
        u -= a
        if u > 0:
            # Continue only while the residual's value survives verbatim in
            # its bucket with an older provenance index; anything else is
            # left to the recursive re-solve, which recovers it from fresh
            # arrays instead of drifting to a nearby (smaller) stored value.
            k = params.bucket_index(u)
            if b.pos[k] == u and b.pos_d1[k] < d1 and u + y <= tf:
                pass
            elif b.neg[k] == u and b.neg_d1[k] < d1 and u + y >= tlow:
                pass
            else:
                u = 0
        if u == 0:
            return y, removed, assignments


def divide_and_conquer(
    items: list[Item], local_target: Number, params: FptasParams
) -> "DCResult":
    """Reconstruct endpoint assignments summing into
    [local_target - eps*T, local_target] from the given items."""
    assignments: dict[int, int] = {}
    removed: set[int] = set()
    y = _dc(items, local_target, params, assignments, removed)
    return DCResult(y_dc=y, assignments=assignments, removed=frozenset(removed))


@dataclass(frozen=True)
class DCResult:
    y_dc: int
    assignments: dict[int, int]
    removed: frozenset[int]


def _dc(
    items: list[Item],
    t_local: Number,
    params: FptasParams,
    assignments: dict[int, int],
    removed_all: set[int],
) -> int:
    if not items:
        return 0
    eps_t = params.eps_t
    half = -(-len(items) // 2)
    lam1, lam2 = items[:half], items[half:]
    b1 = relaxed_dp(lam1, t_local, params)
    b2 = relaxed_dp(lam2, t_local, params)
    u1, u2 = find_u1_u2(b1, b2, t_local, params)
    y1b = y1dc = y2b = y2dc = 0
    lam1_rest = lam1
    if t_local - u2 > eps_t:
        y1b, rem1, asg1 = backtrack(b1, lam1, t_local - u2, params)
        assignments.update(asg1)
        removed_all |= rem1
        lam1_rest = [it for it in lam1 if it[0] not in rem1]
    # b1/b2 are not needed past this point (the second half is re-solved
    # with an updated target below); recycle before recursing so the live
    # slot count stays bounded by a constant number of arrays.
    b1.release()
    b2.release()
    if t_local - u2 - y1b > eps_t:
        y1dc = _dc(lam1_rest, t_local - u2 - y1b, params, assignments, removed_all)
    lam2_rest = lam2
    if t_local - y1b - y1dc > eps_t:
        b2n = relaxed_dp(lam2, t_local - y1b - y1dc, params)
        y2b, rem2, asg2 = backtrack(b2n, lam2, t_local - y1b - y1dc, params)
        b2n.release()
        assignments.update(asg2)
        removed_all |= rem2
        lam2_rest = [it for it in lam2 if it[0] not in rem2]
    if t_local - y1b - y1dc - y2b > eps_t:
        y2dc = _dc(lam2_rest, t_local - y1b - y1dc - y2b, params, assignments, removed_all)
    return y1b + y1dc + y2b + y2dc


def fptas_solve(
    inst: Instance, epsilon: Union[Fraction, str, float], trace: bool = False
) -> SolveOutcome:
    """Solve to within a factor (1 - epsilon) of the optimum.

    The instance must already satisfy T > max hi (run preprocess first).
    The outcome is flagged exact when the result is provably optimal:
    the target itself was reached, the instance has at most one interval,
    or the scan observed delta_hat + eps*T <= T - lo_m (in which case the
    reconstruction target is tight enough to force the true optimum).

    With ``trace=True`` the stats record per-iteration bucket states and
    the reconstruction target, for verification.
    """
    start = time.perf_counter()
    eps = Fraction(epsilon)
    if not (0 < eps < 1):
        raise EpsilonOutOfRange(f"epsilon must be in (0, 1), got {eps}")
    if not inst.length_sorted:
        inst = sort_by_length(inst)
    t = inst.target
    n = inst.n
    params = FptasParams(epsilon=eps, target=t)

    if n == 0:
        return SolveOutcome(
            solution=scatter_solution(inst, []),
            value=0,
            kind="exact",
            epsilon=eps,
            stats={"elapsed": time.perf_counter() - start, "peak_slots": 0},
        )

    scan = BucketArray(params, t)
    t_hat = 0
    delta_hat = 0
    m = 0
    early_exit = False
    scan_trace: list[tuple[list[int], list[int]]] = []
    for i in range(n):
        iv = inst.intervals[i]
        delta_bar = scan.max_value_le(t - iv.lo)
        cand = min(delta_bar + iv.hi, t)
        if cand > t_hat:
            t_hat = cand
            delta_hat = delta_bar
            m = i
        if t_hat == t:
            early_exit = True
            break
        base = scan.values()
        for a in (iv.lo, iv.hi):
            if a <= t:
                scan.insert(a, i, 1 if a == iv.lo else 2)
            for v in base:
                c = v + a
                if c <= t:
                    scan.insert(c, i, 1 if a == iv.lo else 2)
        if trace:
            scan_trace.append((scan.neg.copy(), scan.pos.copy()))
    scan.release()

    lo_m = inst.intervals[m].lo
    hi_m = inst.intervals[m].hi
    case_a = delta_hat + params.eps_t <= t - lo_m
    dc_target: Number = min(delta_hat + params.eps_t, Fraction(t - lo_m))
    items: list[Item] = [
        (i, inst.intervals[i].lo, inst.intervals[i].hi) for i in range(m)
    ]
    x = [0] * n
    if items and dc_target > 0:
        result = divide_and_conquer(items, dc_target, params)
        y_hat = result.y_dc
        for idx, val in result.assignments.items():
            x[idx] = val
    else:
        y_hat = 0
    x[m] = min(hi_m, t - y_hat)
    value = y_hat + x[m]
    kind = "exact" if (value == t or case_a or n == 1) else "approximate"

    stats: dict = {
        "elapsed": time.perf_counter() - start,
        "peak_slots": params.meter.peak,
        "case_a": bool(case_a),
        "early_exit": early_exit,
        "dc_target": dc_target,
    }
    if trace:
        stats["scan_trace"] = scan_trace
    return SolveOutcome(
        solution=scatter_solution(inst, x),
        value=value,
        kind=kind,
        epsilon=eps,
        midrange_index=m + 1,
        stats=stats,
    )
