"""Instance generators: formulas, bounds, determinism, closed-form optimum."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from issp.core import ImmediateSolution, preprocess
from issp.errors import NOutOfRange
from issp.exact import dp_exact, ssp_optimum_mitm
from issp.instgen import (
    HI_RANGE,
    RATIO_DENOM,
    TARGET_CD,
    GenSpec,
    SplitMix64,
    gen_a,
    gen_b,
    gen_c,
    gen_d,
    generate,
    instance_b_optimum,
)


class TestSplitMix64:
    def test_published_output_stream(self):
        # reference values from the generator's published C code, seed 1234567
        rng = SplitMix64(1234567)
        assert [rng.next_u64() for _ in range(5)] == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ]

    def test_randint_range_and_determinism(self):
        rng = SplitMix64(99)
        draws = [rng.randint(7) for _ in range(200)]
        assert all(1 <= d <= 7 for d in draws)
        assert set(draws) == set(range(1, 8))
        rng2 = SplitMix64(99)
        assert draws == [rng2.randint(7) for _ in range(200)]

    def test_randint_rejects_empty_range(self):
        with pytest.raises(ValueError):
            SplitMix64(1).randint(0)

    def test_split_streams_diverge(self):
        rng = SplitMix64(5)
        child = rng.split()
        assert [rng.next_u64() for _ in range(3)] != [child.next_u64() for _ in range(3)]


class TestFamilyA:
    def test_formula_small_n(self):
        inst = gen_a(4)
        # k = 2, items 2**7 + 2**(2+i) + 1 for i = 1..4
        assert [iv.hi for iv in inst.intervals] == [137, 145, 161, 193]
        assert all(iv.lo == iv.hi for iv in inst.intervals)
        assert inst.target == sum(a.hi for a in inst.intervals) // 2

    def test_n_cap(self):
        gen_a(62)
        with pytest.raises(NOutOfRange):
            gen_a(63)
        with pytest.raises(NOutOfRange):
            gen_a(0)


class TestFamilyB:
    def test_formula_n10(self):
        inst = gen_b(10)
        assert [iv.hi for iv in inst.intervals] == [110 + i for i in range(1, 11)]
        assert inst.target == 485

    def test_closed_form_matches_exact_solvers(self):
        for n in range(2, 13):
            inst = gen_b(n)
            pre = preprocess(inst)
            if isinstance(pre, ImmediateSolution):
                expected = pre.solution.total
            elif pre.is_empty:
                expected = 0
            else:
                expected = ssp_optimum_mitm(pre.instance)
            assert instance_b_optimum(n) == expected

    def test_closed_form_matches_dp_at_medium_size(self):
        inst = gen_b(30)
        pre = preprocess(inst)
        assert instance_b_optimum(30) == dp_exact(pre.instance).value

    def test_n1_degenerate_target(self):
        inst = gen_b(1)
        assert inst.target == 1
        assert instance_b_optimum(1) == 0


class TestFamilyC:
    def test_bounds_and_ratio(self):
        c = Fraction(3, 2)
        inst = gen_c(500, c, seed=4)
        assert inst.target == TARGET_CD
        for iv in inst.intervals:
            assert 1 <= iv.hi <= HI_RANGE
            assert iv.lo == max(1, iv.hi * 2 // 3)
            # ratio at least c, up to the floor in lo
            assert Fraction(iv.hi, iv.lo) >= c or iv.lo == 1

    def test_deterministic_in_seed(self):
        assert gen_c(50, Fraction(3, 2), 7) == gen_c(50, Fraction(3, 2), 7)
        assert gen_c(50, Fraction(3, 2), 7) != gen_c(50, Fraction(3, 2), 8)

    def test_rejects_ratio_at_most_one(self):
        with pytest.raises(ValueError):
            gen_c(5, Fraction(1), 0)


class TestFamilyD:
    def test_bounds(self):
        cap = Fraction(3, 2)
        inst = gen_d(500, cap, seed=9)
        assert inst.target == TARGET_CD
        cap_scaled = int(cap * RATIO_DENOM)
        for iv in inst.intervals:
            assert 1 <= iv.hi <= HI_RANGE
            assert iv.lo <= iv.hi
            # per-item ratio is at most the cap, so lo never drops below
            # the floor the cap itself would give
            assert iv.lo >= max(1, iv.hi * RATIO_DENOM // cap_scaled)

    def test_deterministic_in_seed(self):
        assert gen_d(50, Fraction(13, 10), 7) == gen_d(50, Fraction(13, 10), 7)

    def test_rejects_cap_at_most_one(self):
        with pytest.raises(ValueError):
            gen_d(5, Fraction(1), 0)


class TestGenerateDispatch:
    def test_dispatch_matches_direct_calls(self):
        assert generate(GenSpec("A", 5)) == gen_a(5)
        assert generate(GenSpec("B", 5)) == gen_b(5)
        assert generate(GenSpec("C", 5, c=Fraction(3, 2), seed=1)) == gen_c(5, Fraction(3, 2), 1)
        assert generate(GenSpec("D", 5, cap=Fraction(3, 2), seed=1)) == gen_d(5, Fraction(3, 2), 1)

    def test_missing_parameters_rejected(self):
        with pytest.raises(ValueError):
            generate(GenSpec("C", 5))
        with pytest.raises(ValueError):
            generate(GenSpec("D", 5))
        with pytest.raises(ValueError):
            generate(GenSpec("E", 5))
