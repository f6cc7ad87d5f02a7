"""Command-line front end: solve, generate, classify, and bench.

Instance file format (UTF-8, LF):
  line 1:        n T
  lines 2..n+1:  lo hi        (one interval per line)
Lines starting with '#' are ignored.  Serialization is canonical (single
spaces, trailing newline), and parse(serialize(x)) is the identity.

Exit codes: 0 success, 2 parse/validation error, 3 invalid flags,
4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from typing import Optional, TextIO

from . import analysis, exact, fptas, instgen
from .core import (
    ImmediateSolution,
    Instance,
    Solution,
    SolveOutcome,
    evaluate,
    format_percent,
    preprocess,
    relative_error,
    sort_by_length,
    validate,
)
from .errors import InstanceTooLarge, IsspError, MemoryBudgetExceeded

EXIT_PARSE = 2
EXIT_FLAGS = 3
EXIT_BUDGET = 4

BENCH_HEADER = [
    "family",
    "n",
    "param",
    "epsilon",
    "avg_rel_err_pct",
    "avg_time_s",
    "trials",
    "worst_rel_err_pct",
    "worst_time_s",
]


def parse_instance_text(text: str) -> Instance:
    tokens: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens.extend(line.split())
    if len(tokens) < 2:
        raise IsspError("instance file needs at least 'n T' on the first line")
    try:
        numbers = [int(tok) for tok in tokens]
    except ValueError as e:
        raise IsspError(f"non-integer token in instance file: {e}") from e
    n, target = numbers[0], numbers[1]
    body = numbers[2:]
    if n < 0 or len(body) != 2 * n:
        raise IsspError(f"expected {2 * max(n, 0)} endpoint tokens for n = {n}, got {len(body)}")
    pairs = [(body[2 * i], body[2 * i + 1]) for i in range(n)]
    return validate(pairs, target)


def serialize_instance(inst: Instance) -> str:
    lines = [f"{inst.n} {inst.target}"]
    lines += [f"{iv.lo} {iv.hi}" for iv in inst.intervals]
    return "\n".join(lines) + "\n"


def _read_instance(path: str) -> Instance:
    if path == "-":
        return parse_instance_text(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as f:
        return parse_instance_text(f.read())


def parse_ratio(text: str) -> Fraction:
    """Accept 'p/q' or a decimal literal as an exact rational."""
    return Fraction(text)


def _solve_instance(
    inst: Instance, algorithm: str, epsilon: Optional[Fraction]
) -> SolveOutcome:
    """Run preprocessing plus the selected solver; solution in input order."""
    pre = preprocess(inst)
    if isinstance(pre, ImmediateSolution):
        return SolveOutcome(
            solution=pre.solution,
            value=pre.solution.total,
            kind="exact",
            stats={"preprocessing": "immediate", "elapsed": 0.0},
        )
    reduced = pre.instance
    if reduced.is_empty:
        return SolveOutcome(
            solution=Solution(tuple([0] * len(inst.original))),
            value=0,
            kind="exact",
            stats={"preprocessing": "all dropped", "elapsed": 0.0},
        )
    reduced = sort_by_length(reduced)
    if algorithm == "dp":
        return exact.dp_exact(reduced)
    if algorithm == "brute":
        return exact.brute_force_optimum(reduced)
    if algorithm == "fptas":
        return fptas.fptas_solve(reduced, epsilon)
    if algorithm == "auto":
        poly = analysis.solve_polynomial(reduced)
        if poly is not None:
            return poly
        return fptas.fptas_solve(reduced, epsilon)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    try:
        inst = _read_instance(args.path)
    except (OSError, IsspError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    if args.algorithm in ("fptas", "auto") and args.epsilon is None:
        print("error: --epsilon is required for fptas/auto", file=sys.stderr)
        return EXIT_FLAGS
    eps = Fraction(args.epsilon) if args.epsilon is not None else None
    try:
        outcome = _solve_instance(inst, args.algorithm, eps)
    except (MemoryBudgetExceeded, InstanceTooLarge) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    # self-check before printing
    total = evaluate(inst, outcome.solution)
    assert total == outcome.value, "reported value disagrees with its solution"
    if args.json:
        payload = {
            "value": outcome.value,
            "solution": list(outcome.solution.values),
            "kind": outcome.kind,
            "epsilon": None if outcome.epsilon is None else str(outcome.epsilon),
            "midrange_index": outcome.midrange_index,
            "elapsed_s": outcome.stats.get("elapsed"),
        }
        print(json.dumps(payload), file=out)
    else:
        print(f"value {outcome.value}", file=out)
        print("solution " + " ".join(str(x) for x in outcome.solution.values), file=out)
        print(f"kind {outcome.kind}", file=out)
        if outcome.midrange_index is not None:
            print(f"midrange_index {outcome.midrange_index}", file=out)
        print(f"elapsed_s {outcome.stats.get('elapsed', 0.0):.6f}", file=out)
    return 0


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    family = args.family
    try:
        if family == "A":
            inst = instgen.gen_a(args.n)
        elif family == "B":
            inst = instgen.gen_b(args.n)
        elif family == "C":
            if args.c is None:
                print("error: family C requires --c", file=sys.stderr)
                return EXIT_FLAGS
            inst = instgen.gen_c(args.n, parse_ratio(args.c), args.seed)
        elif family == "D":
            if args.C is None:
                print("error: family D requires --C", file=sys.stderr)
                return EXIT_FLAGS
            inst = instgen.gen_d(args.n, parse_ratio(args.C), args.seed)
        else:
            print(f"error: unknown family {family}", file=sys.stderr)
            return EXIT_FLAGS
    except (IsspError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FLAGS
    out.write(serialize_instance(inst))
    return 0


def cmd_classify(args: argparse.Namespace, out: TextIO) -> int:
    try:
        inst = _read_instance(args.path)
    except (OSError, IsspError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    pre = preprocess(inst)
    if isinstance(pre, ImmediateSolution):
        print("preprocessing: immediate solution (an interval contains T)", file=out)
        print(f"value {pre.solution.total}", file=out)
        return 0
    reduced = pre.instance
    if pre.dropped:
        dropped = " ".join(str(i) for i in sorted(pre.dropped))
        print(f"preprocessing: dropped intervals {dropped}", file=out)
    else:
        print("preprocessing: instance already normalized (T > max hi)", file=out)
    if reduced.is_empty:
        print("empty after preprocessing; optimum 0", file=out)
        return 0
    t2 = analysis.check_theorem2(reduced)
    degenerate = analysis.min_interval_length(reduced) == 0
    note = " (zero-length interval present; condition undefined)" if degenerate else ""
    print(f"large-target condition: {'yes' if t2 else 'no'}{note}", file=out)
    cstar = analysis.check_wide(reduced)
    print(f"c* = {cstar} ({'>= 2' if cstar >= 2 else '< 2'})", file=out)
    poly = analysis.solve_polynomial(sort_by_length(reduced))
    if poly is None:
        print("polynomial route: none", file=out)
    else:
        print(f"polynomial route: ({poly.stats['route']})", file=out)
        print(f"value {poly.value}", file=out)
    return 0


def _exact_reference(family: str, inst: Instance, n: int) -> Optional[int]:
    """Exact optimum for families A/B, or None if out of budget."""
    if family == "A":
        if n <= 42:
            reduced = preprocess(inst)
            if isinstance(reduced, ImmediateSolution):
                return reduced.solution.total
            return exact.ssp_optimum_mitm(reduced.instance)
        return None
    if family == "B":
        return instgen.instance_b_optimum(n)
    return None


def cmd_bench(args: argparse.Namespace, out: TextIO) -> int:
    epsilons = [Fraction(e) for e in args.epsilons.split(",")]
    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else None
    family = args.suite
    writer = csv.writer(out)
    writer.writerow(BENCH_HEADER)
    if family in ("A", "B"):
        default_sizes = [10, 15, 20, 25, 30, 35] if family == "A" else [10, 50, 100, 500]
        params: list[Optional[Fraction]] = [None]
    else:
        default_sizes = [1000]
        params = [Fraction(3, 2), Fraction(13, 10), Fraction(11, 10)]
        if args.c is not None:
            params = [parse_ratio(args.c)]
    for n in sizes or default_sizes:
        for param in params:
            for eps in epsilons:
                errors: list[Fraction] = []
                times: list[float] = []
                for trial in range(args.trials):
                    trial_seed = args.seed + trial
                    if family == "A":
                        inst = instgen.gen_a(n)
                    elif family == "B":
                        inst = instgen.gen_b(n)
                    elif family == "C":
                        inst = instgen.gen_c(n, param, trial_seed)
                    else:
                        inst = instgen.gen_d(n, param, trial_seed)
                    if family in ("A", "B"):
                        reference = _exact_reference(family, inst, n)
                        if reference is None:
                            print(
                                f"refusing cell family={family} n={n}: exact "
                                "reference out of budget",
                                file=sys.stderr,
                            )
                            return EXIT_BUDGET
                    else:
                        reference = inst.target
                    pre = preprocess(inst)
                    if isinstance(pre, ImmediateSolution):
                        value, elapsed = pre.solution.total, 0.0
                    elif pre.instance.is_empty:
                        value, elapsed = 0, 0.0
                    else:
                        work = sort_by_length(pre.instance)
                        t0 = time.perf_counter()
                        outcome = fptas.fptas_solve(work, eps)
                        elapsed = time.perf_counter() - t0
                        value = outcome.value
                    errors.append(relative_error(value, reference) if reference else Fraction(0))
                    times.append(elapsed)
                k = len(errors)
                writer.writerow(
                    [
                        family,
                        n,
                        "" if param is None else str(param),
                        str(eps),
                        format_percent(sum(errors, Fraction(0)) / k)[:-1],
                        f"{sum(times) / k:.6f}",
                        k,
                        format_percent(max(errors))[:-1],
                        f"{max(times):.6f}",
                    ]
                )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="issp",
        description="Interval subset sum solvers and benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file ('-' for stdin)")
    p_solve.add_argument("path")
    p_solve.add_argument("--algorithm", choices=["fptas", "dp", "brute", "auto"], default="auto")
    p_solve.add_argument("--epsilon", help="relative error, e.g. 0.1 or 1/10")
    p_solve.add_argument("--json", action="store_true")
    p_solve.set_defaults(func=cmd_solve)

    p_gen = sub.add_parser("generate", help="write an instance file to stdout")
    p_gen.add_argument("--family", choices=["A", "B", "C", "D"], required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--c", help="family C ratio, e.g. 3/2")
    p_gen.add_argument("--C", help="family D ratio upper bound, e.g. 3/2")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.set_defaults(func=cmd_generate)

    p_cls = sub.add_parser("classify", help="report tractable-subclass diagnostics")
    p_cls.add_argument("path")
    p_cls.set_defaults(func=cmd_classify)

    p_bench = sub.add_parser("bench", help="benchmark a family, CSV to stdout")
    p_bench.add_argument("--suite", choices=["A", "B", "C", "D"], required=True)
    p_bench.add_argument("--epsilons", default="0.1,0.01,0.001")
    p_bench.add_argument("--sizes", help="comma-separated n values")
    p_bench.add_argument("--c", help="fix the family C/D parameter")
    p_bench.add_argument("--trials", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except MemoryBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
