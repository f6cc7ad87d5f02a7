"""Deterministic, seedable generators for four benchmark instance families.

Families:
  A: pure subset-sum, a_i = 2**(k+n+1) + 2**(k+i) + 1 with k = floor(log2 n)
     and T = floor(sum(a)/2).  Hard for branch-and-bound; n is capped at 62.
  B: pure subset-sum, a_i = n(n+1) + i and
     T = floor((n-1)/2) * n(n+1) + n(n-1)/2.
  C: hi uniform in [1, 10**14], lo = max(1, floor(hi/c)) for a fixed
     rational ratio c > 1, T = 3 * 10**14.
  D: hi as in C; each item gets its own ratio c_i drawn uniformly from the
     rationals with denominator 10**6 in [1, Cap]; lo = max(1, floor(hi/c_i)).

Randomness comes from SplitMix64 (Steele, Lea & Flood's published
generator: additive constant 0x9E3779B97F4A7C15 with two xor-shift-multiply
finalizer rounds), so streams are reproducible bit-for-bit across platforms
and easy to re-implement in other languages.  Uniform integers are drawn by
rejection sampling, avoiding modulo bias.  Ratios are exact rationals and
all floors are integer divisions, so generated instances are bit-exact
functions of (family, n, parameter, seed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import Instance, validate
from .errors import NOutOfRange

HI_RANGE = 10**14
TARGET_CD = 3 * 10**14
RATIO_DENOM = 10**6

_MASK = (1 << 64) - 1


class SplitMix64:
    """The SplitMix64 pseudo-random generator (64-bit output per step)."""

    GAMMA = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, n: int) -> int:
        """Uniform integer in [1, n] via rejection sampling."""
        if n < 1:
            raise ValueError(f"range bound must be >= 1, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return 1 + r % n

    def split(self) -> "SplitMix64":
        """Derive an independent child stream."""
        return SplitMix64(self.next_u64())


@dataclass(frozen=True)
class GenSpec:
    """Description of one generated instance."""

    family: str  # "A", "B", "C", or "D"
    n: int
    c: Optional[Fraction] = None  # family C ratio
    cap: Optional[Fraction] = None  # family D ratio upper bound
    seed: int = 0


def gen_a(n: int) -> Instance:
    if not (1 <= n <= 62):
        raise NOutOfRange(f"family A supports 1 <= n <= 62, got {n}")
    k = n.bit_length() - 1  # floor(log2 n)
    items = [2 ** (k + n + 1) + 2 ** (k + i) + 1 for i in range(1, n + 1)]
    target = sum(items) // 2
    return validate([(a, a) for a in items], target)


def gen_b(n: int) -> Instance:
    if n < 1:
        raise NOutOfRange(f"family B requires n >= 1, got {n}")
    items = [n * (n + 1) + i for i in range(1, n + 1)]
    target = ((n - 1) // 2) * n * (n + 1) + n * (n - 1) // 2
    if target < 1:
        # n = 1 gives target 0; keep the instance valid, every item is
        # dropped by preprocessing and the optimum is 0.
        target = 1
    return validate([(a, a) for a in items], target)


def gen_c(n: int, c: Fraction, seed: int) -> Instance:
    if n < 1:
        raise NOutOfRange(f"family C requires n >= 1, got {n}")
    c = Fraction(c)
    if c <= 1:
        raise ValueError(f"family C requires ratio c > 1, got {c}")
    rng = SplitMix64(seed)
    pairs = []
    for _ in range(n):
        hi = rng.randint(HI_RANGE)
        lo = max(1, hi * c.denominator // c.numerator)
        pairs.append((lo, hi))
    return validate(pairs, TARGET_CD)


def gen_d(n: int, cap: Fraction, seed: int) -> Instance:
    if n < 1:
        raise NOutOfRange(f"family D requires n >= 1, got {n}")
    cap = Fraction(cap)
    if cap <= 1:
        raise ValueError(f"family D requires Cap > 1, got {cap}")
    cap_scaled = int(cap * RATIO_DENOM)  # floor; c_i numerators live in [10**6, this]
    rng = SplitMix64(seed)
    pairs = []
    for _ in range(n):
        hi = rng.randint(HI_RANGE)
        # c_i = num / 10**6, uniform over denominators-10**6 rationals in [1, Cap]
        num = RATIO_DENOM - 1 + rng.randint(cap_scaled - RATIO_DENOM + 1)
        lo = max(1, hi * RATIO_DENOM // num)
        pairs.append((lo, hi))
    return validate(pairs, TARGET_CD)


def generate(spec: GenSpec) -> Instance:
    if spec.family == "A":
        return gen_a(spec.n)
    if spec.family == "B":
        return gen_b(spec.n)
    if spec.family == "C":
        if spec.c is None:
            raise ValueError("family C requires the ratio parameter c")
        return gen_c(spec.n, spec.c, spec.seed)
    if spec.family == "D":
        if spec.cap is None:
            raise ValueError("family D requires the ratio bound parameter")
        return gen_d(spec.n, spec.cap, spec.seed)
    raise ValueError(f"unknown family {spec.family!r}")


def instance_b_optimum(n: int) -> int:
    """Exact optimum of family B in closed form.

    Picking k items contributes k*n(n+1) plus a sum of k distinct indices
    from 1..n; those index sums cover every integer between k(k+1)/2 and
    k(2n-k+1)/2, so the best total for each cardinality is immediate.
    """
    inst = gen_b(n)
    t = inst.target
    base = n * (n + 1)
    best = 0
    for k in range(0, n + 1):
        rem = t - k * base
        if rem < k * (k + 1) // 2:
            break
        s = min(rem, k * (2 * n - k + 1) // 2)
        best = max(best, k * base + s)
    return best
