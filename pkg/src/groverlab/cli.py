"""Command-line front end and experiment harness.

Subcommands: analyze, search, count, bounds, reproduce-paper.  Every run
emits machine-readable records (JSON lines or CSV) to stdout or --out, and
every record stream is byte-identical across repeats of the same invocation:
per-trial RNG substreams are derived from (seed, trial_index), records carry
a schema_version, and wall-clock timing goes to stderr only.

Integer arguments accept a 2^k form, e.g. --n 2^20.

Exit status: 0 on success, 2 on a usage error, 3 when a run violates an
invariant or a reproduce-paper criterion fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import acceptance, analytics, bounds, counting, search, simulator
from .rng import derive_seed, make_rng

SCHEMA_VERSION = 1

PREDICATES = {
    "even": lambda i: i % 2 == 0,
    "odd": lambda i: i % 2 == 1,
    "square": lambda i: math.isqrt(i) ** 2 == i,
}


@dataclass
class RunRecord:
    """One output row: a trial, an aggregate, a table row, or a summary."""

    command: str
    record: str
    parameters: dict
    seed: int | None
    outputs: dict
    wall_time_ms: float = 0.0
    schema_version: int = SCHEMA_VERSION

    def payload(self) -> dict:
        """Serializable content; excludes wall time to keep output bit-stable."""
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "record": self.record,
            "parameters": self.parameters,
            "seed": self.seed,
            "outputs": self.outputs,
        }


def scaled_int(text: str) -> int:
    """Parse an integer, allowing the power form 2^20."""
    text = text.strip()
    if "^" in text:
        base, _, exponent = text.partition("^")
        return int(base) ** int(exponent)
    return int(text)


def _flatten(payload: dict) -> dict:
    flat: dict = {}
    for key, value in payload.items():
        if isinstance(value, dict):
            for sub, subvalue in value.items():
                flat[f"{key}.{sub}"] = subvalue
        else:
            flat[key] = value
    return flat


def _scalar(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return json.dumps(list(value))
    return str(value)


def render_records(records: list[RunRecord], fmt: str) -> str:
    """Serialize records as JSON lines or CSV with a stable header."""
    if fmt == "json":
        return "".join(json.dumps(r.payload(), sort_keys=True) + "\n" for r in records)
    rows = [_flatten(r.payload()) for r in records]
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_scalar(row.get(key)) for key in header])
    return buffer.getvalue()


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _run_trials(worker, trials: int, workers: int) -> list:
    """Run worker(trial_index) for every index; merge in index order."""
    if workers <= 1:
        return [worker(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, range(trials)))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=scaled_int, default=0, help="master seed (default 0)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--out", default="-", help="output path, or - for stdout")
    parser.add_argument("--workers", type=int, default=1, help="trial worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverlab",
        description="Amplitude-amplification search: analytics, simulation, counting, bounds.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="closed-form per-iteration table and stopping summary")
    p.add_argument("--n", type=scaled_int, required=True, help="table size N (e.g. 2^20)")
    p.add_argument("--t", type=scaled_int, required=True, help="solution count t >= 1")
    p.add_argument("--j-range", default=None, help="iteration range A:B (B exclusive)")
    _add_common(p)

    p = sub.add_parser("search", help="run a search strategy over seeded trials")
    p.add_argument("--n", type=scaled_int, required=True)
    p.add_argument("--t", type=scaled_int, default=None,
                   help="solution count with random placement per trial")
    p.add_argument("--solutions", default=None,
                   help="explicit indices '3,17' or predicate 'pred:even|odd|square'")
    p.add_argument("--strategy", choices=("known", "restart", "unknown"), default="unknown")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--max-restarts", type=int, default=64)
    _add_common(p)

    p = sub.add_parser("count", help="Fourier count estimation over seeded trials")
    p.add_argument("--n", type=scaled_int, required=True)
    p.add_argument("--t", type=scaled_int, required=True)
    p.add_argument("--regime", choices=counting.REGIMES, default=None)
    p.add_argument("--c", type=float, default=None, help="regime constant c")
    p.add_argument("--p", type=scaled_int, default=None, help="fixed register length P (power of 2)")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--spectrum-out", default=None, help="write the |b_nu|^2 spectrum CSV here")
    _add_common(p)

    p = sub.add_parser("bounds", help="query lower bounds vs the strategy's 50% cost")
    p.add_argument("--n", type=scaled_int, default=None)
    p.add_argument("--n-range", default=None, help="doubling sweep A:B inclusive, e.g. 2^10:2^20")
    p.add_argument("--t", type=scaled_int, default=1)
    _add_common(p)

    p = sub.add_parser("reproduce-paper", help="run the built-in verification suite")
    _add_common(p)
    return parser


def cmd_analyze(args, parser) -> tuple[list[RunRecord], int]:
    n, t = args.n, args.t
    if n < 1:
        parser.error("N must be >= 1")
    if t < 1:
        parser.error("t must be >= 1")
    if t > n:
        parser.error("t must be <= N")
    s = analytics.shape(n, t)
    m = analytics.optimal_iterations(s)
    if args.j_range is None:
        j_lo, j_hi = 0, m + 1
    else:
        try:
            lo_text, _, hi_text = args.j_range.partition(":")
            j_lo, j_hi = scaled_int(lo_text), scaled_int(hi_text)
        except ValueError:
            parser.error("--j-range must look like A:B")
        if j_lo < 0 or j_hi <= j_lo:
            parser.error("--j-range must satisfy 0 <= A < B")
    params = {"n": n, "t": t, "j_lo": j_lo, "j_hi": j_hi}
    records = []
    for j in range(j_lo, j_hi):
        pair = analytics.amplitudes(s, j)
        records.append(RunRecord("analyze", "row", params, args.seed, {
            "j": j, "k": pair.k, "l": pair.l,
            "success_probability": analytics.success_probability(s, j),
        }))
    if t < n:
        plan = analytics.optimal_stopping(s)
        j_star, p_star, expected = plan.j_star, plan.success_prob, plan.expected_iterations
    else:
        j_star, p_star, expected = 0, 1.0, 0.0  # every index is marked
    records.append(RunRecord("analyze", "summary", params, args.seed, {
        "theta": s.angle,
        "optimal_iterations": m,
        "j_star": j_star,
        "success_prob": p_star,
        "expected_iterations": expected,
    }))
    return records, 0


def _parse_solutions(spec: str, n: int, parser) -> tuple[int, ...]:
    if spec.startswith("pred:"):
        name = spec[5:]
        if name not in PREDICATES:
            parser.error(f"unknown predicate {name!r}; choose from {sorted(PREDICATES)}")
        return tuple(i for i in range(n) if PREDICATES[name](i))
    try:
        indices = tuple(sorted({scaled_int(part) for part in spec.split(",") if part.strip()}))
    except ValueError:
        parser.error("--solutions must be comma-separated integers or pred:<name>")
    if any(i < 0 or i >= n for i in indices):
        parser.error(f"solution indices must lie in [0, {n})")
    return indices


def cmd_search(args, parser) -> tuple[list[RunRecord], int]:
    n = args.n
    if n < 1:
        parser.error("N must be >= 1")
    if (args.t is None) == (args.solutions is None):
        parser.error("give exactly one of --t or --solutions")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    explicit = None
    if args.solutions is not None:
        explicit = _parse_solutions(args.solutions, n, parser)
        t = len(explicit)
    else:
        t = args.t
        if not 0 <= t <= n:
            parser.error(f"--t must be in [0, {n}]")
    if args.strategy in ("known", "restart") and t < 1:
        parser.error("strategies 'known' and 'restart' require t >= 1")
    params = {"n": n, "t": t, "strategy": args.strategy,
              "solutions": list(explicit) if explicit is not None else None,
              "trials": args.trials}

    def one_trial(index: int) -> RunRecord:
        trial_seed = derive_seed(args.seed, index)
        if explicit is not None:
            oracle = simulator.OracleSpec(n, explicit)
        else:
            oracle = simulator.OracleSpec.random(n, t, make_rng(derive_seed(trial_seed, 1)))
        run_seed = derive_seed(trial_seed, 0)
        if args.strategy == "known":
            outcome = search.search_known_t(oracle, t, run_seed)
        elif args.strategy == "restart":
            outcome = search.search_restart_optimal(oracle, t, run_seed, args.max_restarts)
        else:
            outcome = search.search_unknown_t(oracle, rng=run_seed)
        return RunRecord("search", "trial", params, run_seed, outcome.to_record())

    records = _run_trials(one_trial, args.trials, args.workers)
    iterations = [r.outputs["grover_iterations_used"] for r in records]
    lookups = [r.outputs["oracle_lookups_used"] for r in records]
    successes = sum(1 for r in records if r.outputs["success"])
    records.append(RunRecord("search", "aggregate", params, args.seed, {
        "trials": args.trials,
        "success_rate": successes / args.trials,
        "mean_grover_iterations": statistics.fmean(iterations),
        "stddev_grover_iterations": statistics.pstdev(iterations),
        "mean_oracle_lookups": statistics.fmean(lookups),
    }))
    return records, 0


def cmd_count(args, parser) -> tuple[list[RunRecord], int]:
    n, t = args.n, args.t
    if n < 1:
        parser.error("N must be >= 1")
    if not 0 <= t <= n:
        parser.error(f"--t must be in [0, {n}]")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    if (args.p is None) and (args.regime is None):
        parser.error("give --p for fixed-P estimates or --regime (with --c)")
    if args.regime is not None and args.c is None:
        parser.error("--regime requires --c")
    if args.regime == "exact" and args.c < 14:
        parser.error("exact regime requires c >= 14")
    if args.p is not None and (args.p < 2 or args.p & (args.p - 1)):
        parser.error("--p must be a power of 2 and >= 2")
    s = analytics.shape(n, t)
    params = {"n": n, "t": t, "regime": args.regime, "c": args.c, "p": args.p,
              "trials": args.trials}

    def one_trial(index: int) -> RunRecord:
        trial_seed = derive_seed(args.seed, index)
        if args.p is not None:
            est = counting.estimate_t(s, args.p, trial_seed)
        else:
            est = counting.count_with_regime(s, args.regime, args.c, trial_seed)
        f_true = est.P * s.angle / math.pi
        outputs = est.to_record()
        outputs["f_true"] = f_true
        outputs["frequency_within_one"] = bool(abs(f_true - est.f_tilde) < 1)
        outputs["abs_error"] = abs(t - est.t_tilde)
        return RunRecord("count", "trial", params, trial_seed, outputs)

    records = _run_trials(one_trial, args.trials, args.workers)
    close = sum(1 for r in records if r.outputs["frequency_within_one"])
    recovered = sum(1 for r in records if r.outputs["t_rounded"] == t)
    mean_abs_error = statistics.fmean(r.outputs["abs_error"] for r in records)
    records.append(RunRecord("count", "aggregate", params, args.seed, {
        "trials": args.trials,
        "rate_frequency_within_one": close / args.trials,
        "exact_recovery_rate": recovered / args.trials,
        "mean_abs_error": mean_abs_error,
    }))

    if args.spectrum_out:
        P = args.p if args.p is not None else counting.next_power_of_two(args.c * math.sqrt(n))
        branch = counting.SOLUTION if t >= 1 else counting.NON_SOLUTION
        register = counting.build_j_register(s, P, branch=branch)
        probs = counting.spectrum(register)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["nu", "probability"])
        for nu, prob in enumerate(probs):
            writer.writerow([nu, repr(float(prob))])
        with open(args.spectrum_out, "w", encoding="utf-8") as fh:
            fh.write(buffer.getvalue())
    return records, 0


def cmd_bounds(args, parser) -> tuple[list[RunRecord], int]:
    if (args.n is None) == (args.n_range is None):
        parser.error("give exactly one of --n or --n-range")
    if args.n_range is not None:
        lo_text, _, hi_text = args.n_range.partition(":")
        try:
            lo, hi = scaled_int(lo_text), scaled_int(hi_text)
        except ValueError:
            parser.error("--n-range must look like A:B")
        if lo < 1 or hi < lo:
            parser.error("--n-range must satisfy 1 <= A <= B")
        sizes = []
        n = lo
        while n <= hi:
            sizes.append(n)
            n *= 2
    else:
        sizes = [args.n]
    if args.t < 1:
        parser.error("--t must be >= 1")
    records = []
    for n in sizes:
        if args.t > n:
            parser.error(f"--t must be <= N ({n})")
        report = bounds.compare_grover_to_bound(n, args.t)
        records.append(RunRecord("bounds", "row",
                                 {"n": n, "t": args.t}, args.seed, report.to_record()))
    return records, 0


def cmd_reproduce(args, parser) -> tuple[list[RunRecord], int]:
    def progress(result) -> None:
        mark = "PASS" if result.passed else "FAIL"
        print(f"[{result.number:2d}/11] {mark}  {result.name}  ({result.wall_time_s:.1f}s)",
              file=sys.stderr)
        print(f"        {result.details}", file=sys.stderr)

    results = acceptance.run_all(progress=progress)
    records = [
        RunRecord("reproduce-paper", "criterion", {}, None, {
            "number": r.number, "name": r.name, "passed": r.passed, "details": r.details,
        })
        for r in results
    ]
    passed = sum(1 for r in results if r.passed)
    records.append(RunRecord("reproduce-paper", "aggregate", {}, None, {
        "passed": passed, "total": len(results), "all_passed": passed == len(results),
    }))
    print(f"{passed}/{len(results)} criteria passed", file=sys.stderr)
    return records, 0 if passed == len(results) else 3


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    handlers = {
        "analyze": cmd_analyze,
        "search": cmd_search,
        "count": cmd_count,
        "bounds": cmd_bounds,
        "reproduce-paper": cmd_reproduce,
    }
    try:
        records, status = handlers[args.subcommand](args, parser)
    except (AssertionError, ArithmeticError, ValueError) as exc:
        print(f"groverlab: invariant failure: {exc}", file=sys.stderr)
        return 3
    _emit(render_records(records, args.format), args.out)
    elapsed_ms = (time.perf_counter() - started) * 1000
    print(f"# groverlab {args.subcommand} wall_time_ms={elapsed_ms:.1f}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
