"""Command-line front end.

Exit status:
    0  success
    1  usage error or unusable input (including a disconnected configuration)
    2  monitor violation
    3  round limit reached, or exhaustive search horizon too small
    4  exhaustive search exceeded its state budget
    5  a statistics row or impossibility check failed
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from statistics import mean

from trigather.engine.adversary import SearchBudgetExceeded, exhaustive_adversary, window_configurations
from trigather.engine.core import DisconnectedError, Outcome, default_max_rounds, run
from trigather.engine.schedulers import Fsync, RandomFair, RoundRobin, Scheduler, parse_scheduler
from trigather.engine.symmetry import every_rule_fails, symmetry_deadlock_check
from trigather.harness.configfile import ConfigError, read_config
from trigather.harness.generate import SHAPES, generate_connected
from trigather.harness.svg import emit_svg
from trigather.harness.tracefile import write_atomic, write_trace
from trigather.swarm import is_connected, smallest_enclosing_rectangle

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_MAX_ROUNDS = 3
EXIT_BUDGET = 4
EXIT_FAILED = 5

SEED_ENV = "TRIGATHER_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 means a monitor violation here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def upper_bound(n: int) -> int:
    """Epoch budget for n robots: ceil(5(n+1)/2)."""
    return (5 * (n + 1) + 1) // 2


def lower_bound(n: int) -> int:
    """Fewest epochs a vertical line of n robots can gather in: ceil((n-1)/2)."""
    return n // 2


def _parse_gen(text: str) -> tuple[str, int, int]:
    parts = text.split(":")
    if len(parts) != 3 or parts[0] not in SHAPES:
        raise UsageError(f"--gen expects shape:n:seed with shape in {', '.join(SHAPES)}, got {text!r}")
    try:
        return parts[0], int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--gen expects integer n and seed, got {text!r}") from None


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _load_initial(args):
    if args.config:
        return read_config(args.config)
    shape, n, seed = _parse_gen(args.gen)
    env = _env_seed()
    return generate_connected(n, env if env is not None else seed, shape)


def _scheduler(text: str) -> Scheduler:
    try:
        return parse_scheduler(text)
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad --scheduler {text!r}: {exc}") from None


def _write_frames(trace, every: int, directory: str) -> int:
    os.makedirs(directory, exist_ok=True)
    ser = smallest_enclosing_rectangle(trace.initial)
    config = trace.initial
    positions = list(config.positions)
    written = 0

    def emit(index, cfg):
        nonlocal written
        write_atomic(os.path.join(directory, f"round_{index:05d}.svg"), emit_svg(cfg, ser, title=f"round {index}"))
        written += 1

    emit(0, config)
    for rec in trace.records:
        for rid, _, q in rec.moves:
            positions[rid] = q
        if rec.index % every == 0 or rec.index == trace.rounds:
            emit(rec.index, config.moved(positions))
    return written


def cmd_run(args) -> int:
    initial = _load_initial(args)
    scheduler = _scheduler(args.scheduler)
    if not is_connected(initial):
        raise DisconnectedError("disconnected initial configuration")
    max_rounds = args.max_rounds if args.max_rounds is not None else default_max_rounds(initial.n)
    if max_rounds < 1:
        raise UsageError("--max-rounds must be >= 1")
    if args.svg_every is not None and args.svg_every < 1:
        raise UsageError("--svg-every must be >= 1")

    trace = run(initial, scheduler, monitors=args.monitors == "on", max_rounds=max_rounds)
    if args.trace:
        write_trace(trace, args.trace)
    if args.svg_every:
        _write_frames(trace, args.svg_every, args.svg_dir)

    print(f"outcome={trace.outcome.value} n={initial.n} rounds={trace.rounds} epochs={trace.epochs} "
          f"bound={upper_bound(initial.n)} scheduler={trace.scheduler}")
    if trace.outcome is Outcome.VIOLATION:
        print(trace.detail, file=sys.stderr)
        return EXIT_VIOLATION
    if trace.outcome is Outcome.MAX_ROUNDS:
        return EXIT_MAX_ROUNDS
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"--n-range expects A..B, got {text!r}") from None
    if a < 1 or b < a:
        raise UsageError(f"--n-range {text!r} is empty")
    return range(a, b + 1)


def _stats_scheduler(text: str, seed: int) -> tuple[Scheduler, int | None]:
    """Scheduler for one stats run and its fairness window, if it has one.

    ``random[:p[:W]]`` takes its seed from the run's seed index.
    """
    kind, _, rest = text.partition(":")
    if kind == "random":
        parts = rest.split(":") if rest else []
        if len(parts) > 2:
            raise UsageError("stats takes --scheduler random[:p[:W]]; seeds come from --seeds")
        p = float(parts[0]) if parts else 0.5
        window = int(parts[1]) if len(parts) > 1 else None
        return RandomFair(seed, p, window), window
    sched = _scheduler(text)
    if isinstance(sched, (Fsync, RoundRobin)):
        return sched, None
    raise UsageError("stats supports fsync, rr:k and random[:p[:W]]")


def round_budget(n: int, sched: Scheduler, window: int | None) -> int:
    # every robot acts within this many rounds, so the epoch bound fits inside
    if isinstance(sched, Fsync):
        per_epoch = 1
    elif isinstance(sched, RoundRobin):
        per_epoch = math.ceil(n / min(sched.batch, n))
    else:
        per_epoch = window if window is not None else 2 * n
    return upper_bound(n) * per_epoch + 1


def cmd_stats(args) -> int:
    ns = _parse_range(args.n_range)
    if args.seeds < 1:
        raise UsageError("--seeds must be >= 1")
    rows = []
    worst = EXIT_OK
    for n in ns:
        epochs = []
        violated = stuck = False
        for seed in range(args.seeds):
            sched, window = _stats_scheduler(args.scheduler, seed)
            trace = run(generate_connected(n, seed, args.shape), sched, max_rounds=round_budget(n, sched, window))
            violated |= trace.outcome is Outcome.VIOLATION
            stuck |= trace.outcome is Outcome.MAX_ROUNDS
            epochs.append(trace.epochs)
        bound = upper_bound(n)
        ok = not violated and not stuck and max(epochs) <= bound
        row = {
            "n": n,
            "shape": args.shape,
            "runs": len(epochs),
            "max_epochs": max(epochs),
            "mean_epochs": f"{mean(epochs):.2f}",
            "bound": bound,
            "pass": "pass" if ok else "fail",
        }
        if args.shape == "line":
            low_ok = min(epochs) >= lower_bound(n)
            row["min_epochs"] = min(epochs)
            row["lower_bound"] = lower_bound(n)
            row["lower_pass"] = "pass" if low_ok else "fail"
            ok = ok and low_ok
        rows.append(row)
        if violated:
            worst = EXIT_VIOLATION
        elif not ok and worst == EXIT_OK:
            worst = EXIT_FAILED

    fields = list(rows[0])
    if args.csv:
        writer = csv.DictWriter(sys.stdout, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in fields}
        print("  ".join(f.rjust(widths[f]) for f in fields))
        for r in rows:
            print("  ".join(str(r[f]).rjust(widths[f]) for f in fields))
    return worst


def _check_impossibility(args) -> int:
    horizon = args.horizon if args.horizon is not None else 20
    report = symmetry_deadlock_check(horizon)
    for r in report.results:
        print(f"{str(r.choice):<10} {r.outcome:<13} round {r.rounds}")
    ok = report.none_gathered and report.all_classified
    if args.all_rules:
        rules_ok = every_rule_fails(horizon)
        print(f"all 7^6 view rules: {'none gathers' if rules_ok else 'SOME RULE GATHERS'}")
        ok = ok and rules_ok
    print("no choice gathers" if ok else "impossibility check FAILED")
    return EXIT_OK if ok else EXIT_FAILED


def _check_exhaustive(args) -> int:
    if args.window is None or args.horizon is None:
        raise UsageError("exhaustive mode needs --window and --horizon")
    if args.config:
        configs = [read_config(args.config)]
    else:
        if args.n is None:
            raise UsageError("exhaustive mode needs --n or --config")
        configs = window_configurations(args.n, args.cols, args.hrows)
    status = EXIT_OK
    for config in configs:
        label = " ".join(f"({c},{h})" for c, h in config.positions)
        try:
            rep = exhaustive_adversary(config, args.window, args.horizon, max_states=args.max_states)
        except SearchBudgetExceeded as exc:
            print(f"{label}: search budget exceeded ({exc})")
            return EXIT_BUDGET
        if rep.violations:
            verdict = "monitor violation"
            status = EXIT_VIOLATION
        elif rep.horizon_too_small:
            verdict = "horizon too small"
            if status == EXIT_OK:
                status = EXIT_MAX_ROUNDS
        else:
            verdict = "all gathered"
        print(f"{label}: states={rep.states} branches={rep.branches} max_rounds={rep.max_rounds} "
              f"max_epochs={rep.max_epochs} {verdict}")
        for v in rep.violations:
            print(f"  {v}")
    summary = {EXIT_OK: "every fair schedule gathers", EXIT_VIOLATION: "monitor violations found",
               EXIT_MAX_ROUNDS: "horizon too small: some branches not yet gathered"}
    print(f"{len(configs)} configurations: {summary[status]}")
    return status


def cmd_check(args) -> int:
    if args.mode == "impossibility":
        return _check_impossibility(args)
    return _check_exhaustive(args)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trigather", description="Gathering simulator for myopic robots on a triangular grid.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="simulate one configuration")
    src = p_run.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="configuration file")
    src.add_argument("--gen", help=f"generate shape:n:seed ({SEED_ENV} overrides the seed)")
    p_run.add_argument("--scheduler", default="fsync", help="fsync | rr:k | random:seed[:p[:W]] | script:PATH")
    p_run.add_argument("--max-rounds", type=int, help="round limit (default 10*(n+2))")
    p_run.add_argument("--trace", help="write a JSON-lines trace here")
    p_run.add_argument("--svg-every", type=int, help="write an SVG frame every K rounds")
    p_run.add_argument("--svg-dir", default="frames", help="directory for SVG frames (default: frames)")
    p_run.add_argument("--monitors", choices=("on", "off"), default="on")
    p_run.set_defaults(func=cmd_run)

    p_stats = sub.add_parser("stats", help="epoch counts against the bounds over many seeds")
    p_stats.add_argument("--n-range", required=True, help="A..B")
    p_stats.add_argument("--seeds", type=int, default=10)
    p_stats.add_argument("--scheduler", default="fsync", help="fsync | rr:k | random[:p[:W]] (seeded per run)")
    p_stats.add_argument("--shape", choices=SHAPES, default="blob")
    p_stats.add_argument("--csv", action="store_true", help="CSV instead of an aligned table")
    p_stats.set_defaults(func=cmd_stats)

    p_check = sub.add_parser("check", help="impossibility demo or exhaustive model check")
    p_check.add_argument("--mode", choices=("impossibility", "exhaustive"), required=True)
    p_check.add_argument("--n", type=int, help="robots per configuration (exhaustive)")
    p_check.add_argument("--config", help="check this configuration instead of a window sweep")
    p_check.add_argument("--window", type=int, help="fairness window W")
    p_check.add_argument("--horizon", type=int, help="round horizon H")
    p_check.add_argument("--cols", type=int, default=3, help="sweep window width in columns (default 3)")
    p_check.add_argument("--hrows", type=int, default=5, help="sweep window height in half-rows (default 5)")
    p_check.add_argument("--max-states", type=int, default=1_000_000, help="search state budget")
    p_check.add_argument("--all-rules", action="store_true", help="also try every view-to-move rule")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, DisconnectedError, ValueError, OSError) as exc:
        print(f"trigather: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
