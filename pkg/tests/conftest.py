"""Shared test helpers: an independent reference solver and strategies.

``reference_optimum`` deliberately shares no code with the package: it
walks every reachable total by trying every integer inside every interval,
so agreement with the package's solvers is meaningful evidence, not an
identity.
"""

from __future__ import annotations

from hypothesis import strategies as st

from issp.core import Instance, validate
from issp.instgen import SplitMix64


def reference_optimum(pairs: list[tuple[int, int]], target: int) -> int:
    """Exhaustive reachable-total walk; exponential-ish, small inputs only."""
    reachable = {0}
    for lo, hi in pairs:
        new = set(reachable)
        for r in reachable:
            top = min(hi, target - r)
            for v in range(lo, top + 1):
                new.add(r + v)
        reachable = new
    return max(reachable)


def random_instance(rng: SplitMix64, max_n: int, max_end: int, max_t: int) -> Instance:
    """Uniform small instance from a seeded stream (for bulk sweeps)."""
    n = rng.randint(max_n)
    pairs = []
    for _ in range(n):
        a = rng.randint(max_end)
        b = rng.randint(max_end)
        pairs.append((min(a, b), max(a, b)))
    return validate(pairs, rng.randint(max_t))


@st.composite
def instances(draw, max_n: int = 8, max_end: int = 40, max_t: int = 160):
    """Hypothesis strategy for small valid instances."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = []
    for _ in range(n):
        lo = draw(st.integers(min_value=1, max_value=max_end))
        hi = draw(st.integers(min_value=lo, max_value=max_end))
        pairs.append((lo, hi))
    target = draw(st.integers(min_value=1, max_value=max_t))
    return validate(pairs, target)
