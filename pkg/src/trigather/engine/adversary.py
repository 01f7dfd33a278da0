"""Bounded model checking over every fair SSYNC activation sequence.

A search state is the robots' positions plus each robot's idle streak and
the progress of the current epoch.  States are keyed up to translation (the
initial bounding polygon is translated along with the robots, so monitor
verdicts are preserved).  Every round in which a topmost robot is active
lowers the sum of heights, and top robots cannot idle for ``window``
rounds, so the state graph is acyclic and longest schedules are exact.
"""
from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field

from trigather.engine.core import step
from trigather.engine.monitors import EpochState, check_round_invariants
from trigather.grid import Chirality, GridPoint
from trigather.swarm import (
    SER,
    Configuration,
    bounding_polygon,
    is_connected,
    occupancy_metrics,
    occupied_connected,
    smallest_enclosing_rectangle,
)


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass
class AdversaryReport:
    horizon: int
    window: int
    states: int = 0
    branches: int = 0
    max_rounds: int = 0
    max_epochs: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def all_gathered(self) -> bool:
        """Every fair schedule gathers within the horizon with clean monitors."""
        return not self.violations and self.max_rounds <= self.horizon

    @property
    def horizon_too_small(self) -> bool:
        return self.max_rounds > self.horizon


@dataclass(frozen=True)
class _Value:
    rounds: int
    epochs: int
    branches: int


def _key(positions, ser: SER, idle, seen, epoch_top):
    e_l = min(p[0] for p in positions)
    top = max(p[1] for p in positions)
    return (
        tuple((c - e_l, h - top) for c, h in positions),
        (ser.col_min - e_l, ser.col_max - e_l, ser.hrow_min - top, ser.hrow_max - top),
        idle,
        seen,
        epoch_top - top,
    )


def exhaustive_adversary(
    initial: Configuration,
    window: int,
    horizon: int,
    max_states: int = 1_000_000,
    max_violations: int = 20,
) -> AdversaryReport:
    """Explore all activation sequences in which no robot idles ``window`` rounds in a row."""
    if window < 1:
        raise ValueError("fairness window must be >= 1")
    if not is_connected(initial):
        raise ValueError("disconnected initial configuration")
    n = initial.n
    full = (1 << n) - 1
    polygon = bounding_polygon(smallest_enclosing_rectangle(initial))
    report = AdversaryReport(horizon, window)
    memo: dict[tuple, _Value] = {}
    on_stack: set[tuple] = set()

    def explore(config: Configuration, idle: tuple[int, ...], seen: int, epoch_top: int) -> _Value:
        key = _key(config.positions, polygon.ser, idle, seen, epoch_top)
        if key in memo:
            return memo[key]
        if key in on_stack:
            report.violations.append(f"livelock: state repeats at {config.positions}")
            return _Value(0, 0, 0)
        if len(memo) >= max_states:
            raise SearchBudgetExceeded(f"more than {max_states} states")
        on_stack.add(key)

        forced = sum(1 << i for i in range(n) if idle[i] >= window - 1)
        m_before = occupancy_metrics(config.occupancy)
        rounds = epochs = branches = 0
        for mask in range(1, full + 1):
            if mask & forced != forced:
                continue
            active = [i for i in range(n) if mask >> i & 1]
            after = step(config, active)
            m_after = occupancy_metrics(after.occupancy)
            now_seen = seen | mask
            boundary = now_seen == full
            epoch = EpochState(boundary, epoch_top, False)
            found = check_round_invariants(config, after, polygon, epoch, m_before, m_after)
            if found:
                if len(report.violations) < max_violations:
                    report.violations.extend(f"{v} (from {config.positions}, active {active})" for v in found)
                branches += 1
                rounds = max(rounds, 1)
                continue
            next_idle = tuple(0 if mask >> i & 1 else idle[i] + 1 for i in range(n))
            done_epochs = 1 if boundary else 0
            if boundary:
                now_seen = 0
            if len(after.occupancy) == 1:
                child = _Value(0, 1 if now_seen else 0, 1)
            else:
                child = explore(after, next_idle, now_seen, m_after.top_hrow if boundary else epoch_top)
            rounds = max(rounds, 1 + child.rounds)
            epochs = max(epochs, done_epochs + child.epochs)
            branches += child.branches
        value = _Value(rounds, epochs, branches)
        on_stack.discard(key)
        memo[key] = value
        return value

    if len(initial.occupancy) == 1:
        report.branches = 1
        return report
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10_000))
    try:
        top = occupancy_metrics(initial.occupancy).top_hrow
        value = explore(initial, (0,) * n, 0, top)
    finally:
        sys.setrecursionlimit(limit)
    report.states = len(memo)
    report.branches = value.branches
    report.max_rounds = value.rounds
    report.max_epochs = value.epochs
    return report


def window_configurations(n: int, cols: int = 3, hrows: int = 5) -> list[Configuration]:
    """Connected placements of ``n`` robots on distinct vertices of a small window.

    The window spans columns ``0..cols-1`` and half-rows ``0..hrows-1``; one
    representative per translation class is kept.
    """
    points = [GridPoint(c, h) for c in range(cols) for h in range(hrows) if (c - h) % 2 == 0]
    seen = set()
    out = []
    for combo in itertools.combinations(points, n):
        if not occupied_connected(set(combo)):
            continue
        c0 = min(p.col for p in combo)
        h0 = min(p.hrow for p in combo if p.col == c0)
        shape = frozenset((p.col - c0, p.hrow - h0) for p in combo)
        if shape in seen:
            continue
        seen.add(shape)
        out.append(Configuration(tuple(combo), (Chirality.STANDARD,) * n))
    return out

