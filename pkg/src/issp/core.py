"""Domain types and basic operations for the interval subset sum problem.

An instance consists of n integer intervals [lo_i, hi_i] and a target T.
A solution picks x_i = 0 or an integer in [lo_i, hi_i] for every i,
maximizing the total sum subject to sum(x) <= T.

Solutions are always expressed in the original input order of the
intervals, regardless of any internal reordering or preprocessing done by
the solvers.  All arithmetic uses Python's arbitrary-precision integers, so
sums far beyond 64-bit range are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    InvertedInterval,
    NegativeGap,
    NonPositiveEndpoint,
    NonPositiveTarget,
    TargetExceeded,
    ValueOutsideInterval,
)


@dataclass(frozen=True)
class Interval:
    """One selectable item: any integer in [lo, hi], or 0 (off)."""

    lo: int
    hi: int

    @property
    def length(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class Instance:
    """An interval list plus target.

    ``intervals`` is the current working view (possibly reduced and/or
    sorted by length).  ``origin[i]`` gives the position of
    ``intervals[i]`` in the original input, and ``original`` keeps the full
    validated input so solutions can always be reported and checked in
    input order.
    """

    intervals: tuple[Interval, ...]
    target: int
    origin: tuple[int, ...]
    original: tuple[Interval, ...]
    length_sorted: bool = False

    @property
    def n(self) -> int:
        return len(self.intervals)

    @property
    def is_empty(self) -> bool:
        return not self.intervals


@dataclass(frozen=True)
class Solution:
    """Chosen values x_i, in original input order. 0 means interval off."""

    values: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class SolveOutcome:
    """Result of a solver run."""

    solution: Solution
    value: int
    kind: str  # "exact" or "approximate"
    epsilon: Optional[Fraction] = None
    midrange_index: Optional[int] = None  # 1-based position in length-sorted order
    stats: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ImmediateSolution:
    """Preprocessing found an interval containing T; the instance is solved."""

    solution: Solution
    index: int  # original position of the interval that absorbed T


@dataclass(frozen=True)
class ReducedInstance:
    """Preprocessing output: T now strictly exceeds every upper endpoint."""

    instance: Instance
    dropped: frozenset[int]  # original positions of removed intervals

    @property
    def is_empty(self) -> bool:
        return self.instance.is_empty


PreprocessOutcome = Union[ImmediateSolution, ReducedInstance]


def validate(pairs: Iterable[tuple[int, int]], target: int) -> Instance:
    """Check endpoints and target, returning an Instance in input order."""
    if target < 1:
        raise NonPositiveTarget(f"target must be >= 1, got {target}")
    intervals = []
    for pos, (lo, hi) in enumerate(pairs):
        if lo < 1 or hi < 1:
            raise NonPositiveEndpoint(f"interval {pos}: endpoints must be >= 1, got [{lo}, {hi}]")
        if lo > hi:
            raise InvertedInterval(f"interval {pos}: lo {lo} > hi {hi}")
        intervals.append(Interval(lo, hi))
    ivs = tuple(intervals)
    return Instance(intervals=ivs, target=target, origin=tuple(range(len(ivs))), original=ivs)


def preprocess(inst: Instance) -> PreprocessOutcome:
    """Normalize so the target strictly exceeds every upper endpoint.

    Scanning in current order: the first interval with lo <= T <= hi yields
    an immediately optimal solution x_i = T; intervals with lo > T are
    dropped (they can never be switched on).  The surviving instance
    satisfies T > max hi.  Idempotent on already-reduced instances.
    """
    t = inst.target
    for i, iv in enumerate(inst.intervals):
        if iv.lo <= t <= iv.hi:
            values = [0] * len(inst.original)
            values[inst.origin[i]] = t
            return ImmediateSolution(solution=Solution(tuple(values)), index=inst.origin[i])
    keep = [i for i, iv in enumerate(inst.intervals) if iv.lo <= t]
    kept = set(keep)
    dropped = frozenset(inst.origin[i] for i in range(inst.n) if i not in kept)
    reduced = Instance(
        intervals=tuple(inst.intervals[i] for i in keep),
        target=t,
        origin=tuple(inst.origin[i] for i in keep),
        original=inst.original,
        length_sorted=inst.length_sorted,
    )
    return ReducedInstance(instance=reduced, dropped=dropped)


def sort_by_length(inst: Instance) -> Instance:
    """Stable-sort intervals by nondecreasing width hi - lo."""
    order = sorted(range(inst.n), key=lambda i: inst.intervals[i].length)
    return Instance(
        intervals=tuple(inst.intervals[i] for i in order),
        target=inst.target,
        origin=tuple(inst.origin[i] for i in order),
        original=inst.original,
        length_sorted=True,
    )


def evaluate(inst: Instance, sol: Solution) -> int:
    """Return the total of a solution, raising if it is infeasible.

    The solution is interpreted in original input order and checked
    against the originally validated intervals.
    """
    ref = inst.original
    if len(sol.values) != len(ref):
        raise ValueOutsideInterval(
            f"solution has {len(sol.values)} entries, instance has {len(ref)} intervals"
        )
    total = 0
    for i, (x, iv) in enumerate(zip(sol.values, ref)):
        if x != 0 and not (iv.lo <= x <= iv.hi):
            raise ValueOutsideInterval(f"x[{i}] = {x} outside [{iv.lo}, {iv.hi}] and nonzero")
        total += x
    if total > inst.target:
        raise TargetExceeded(f"total {total} exceeds target {inst.target}")
    return total


def midrange_count(inst: Instance, sol: Solution) -> int:
    """Number of entries strictly between their interval's endpoints."""
    return sum(
        1
        for x, iv in zip(sol.values, inst.original)
        if x != 0 and iv.lo < x < iv.hi
    )


def relative_error(approx_value: int, reference_value: int) -> Fraction:
    """(reference - approx) / reference as an exact rational."""
    if reference_value <= 0:
        raise NegativeGap(f"reference must be positive, got {reference_value}")
    if approx_value > reference_value:
        raise NegativeGap(f"approx {approx_value} exceeds reference {reference_value}")
    if approx_value < 0:
        raise NegativeGap(f"approx must be nonnegative, got {approx_value}")
    return Fraction(reference_value - approx_value, reference_value)


def format_percent(x: Fraction, decimals: int = 3) -> str:
    """Render an exact rational as a percentage string, e.g. '1.515%'."""
    scaled = x * 100 * 10**decimals
    # round half away from zero on the exact rational
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    digits = f"{q:0{decimals + 1}d}"
    return f"{digits[:-decimals]}.{digits[-decimals:]}%"


def scatter_solution(inst: Instance, values_current_order: list[int]) -> Solution:
    """Lift per-position choices on ``inst.intervals`` to input order."""
    out = [0] * len(inst.original)
    for i, x in enumerate(values_current_order):
        out[inst.origin[i]] = x
    return Solution(tuple(out))
