"""Round-based execution with snapshot semantics.

Every robot active in a round looks at the same start-of-round
configuration; all moves are applied together afterwards.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from trigather.engine.monitors import EpochState, Violation, check_round_invariants
from trigather.engine.schedulers import Scheduler
from trigather.grid import GridPoint
from trigather.rule import ROUTES, Decision
from trigather.swarm import (
    Configuration,
    Metrics,
    bounding_polygon,
    is_connected,
    occupancy_metrics,
    smallest_enclosing_rectangle,
)

class DisconnectedError(ValueError):
    pass


class Outcome(enum.Enum):
    GATHERED = "gathered"
    MAX_ROUNDS = "max_rounds_exceeded"
    VIOLATION = "monitor_violation"


@dataclass
class RoundRecord:
    index: int
    active: frozenset[int]
    moves: list[tuple[int, GridPoint, GridPoint]]
    metrics: Metrics
    violations: list[Violation]
    epoch_boundary: bool
    before: Configuration = field(repr=False, compare=False)

    @property
    def decisions(self) -> dict[int, Decision]:
        """What each active robot decided, recomputed from the start-of-round snapshot."""
        return _decide_all(self.before, self.active)[0]


@dataclass
class Trace:
    initial: Configuration
    records: list[RoundRecord]
    outcome: Outcome
    rounds: int
    epochs: int
    scheduler: str = ""
    seed: int | None = None
    detail: str = ""
    swaps: int = 0
    final: Configuration | None = field(default=None, repr=False)

    @property
    def gathered(self) -> bool:
        return self.outcome is Outcome.GATHERED

    @property
    def violations(self) -> list[Violation]:
        return [v for r in self.records for v in r.violations]


def _view_bits(occ, c, h):
    # same bit order as rule.global_view_bits, inlined for speed
    return (
        ((c, h + 2) in occ)
        | ((c + 1, h + 1) in occ) << 1
        | ((c + 1, h - 1) in occ) << 2
        | ((c, h - 2) in occ) << 3
        | ((c - 1, h - 1) in occ) << 4
        | ((c - 1, h + 1) in occ) << 5
    )


def _decide_all(config: Configuration, active: Iterable[int]):
    """Decisions of the active robots and the resulting ``(id, from, to)`` moves."""
    occ = config.occupancy
    positions = config.positions
    routes = [ROUTES[ch] for ch in config.chiralities]
    views: dict[GridPoint, int] = {}
    decisions: dict[int, Decision] = {}
    moves = []
    for rid in sorted(active):
        p = positions[rid]
        bits = views.get(p)
        if bits is None:
            bits = views[p] = _view_bits(occ, p[0], p[1])
        decision, offset = routes[rid][bits]
        decisions[rid] = decision
        if offset is not None:
            moves.append((rid, p, GridPoint(p[0] + offset[0], p[1] + offset[1])))
    return decisions, moves


def _check_active(config: Configuration, active) -> None:
    if not active:
        raise ValueError("activation set is empty")
    n = len(config.positions)
    if not all(type(rid) is int and 0 <= rid < n for rid in active):
        raise KeyError(f"unknown robot ids in {sorted(active)}")


def step(config: Configuration, active: Iterable[int]) -> Configuration:
    """One SSYNC round: ``active`` robots look, then all of them move at once."""
    active = frozenset(active)
    _check_active(config, active)
    _, moves = _decide_all(config, active)
    if not moves:
        return config
    positions = list(config.positions)
    for rid, _, q in moves:
        positions[rid] = q
    return config.moved(positions)


def epoch_count(history: Iterable[Iterable[int]], n: int) -> int:
    """Greedy epoch segmentation; a trailing partial epoch counts as one."""
    everyone = set(range(n))
    seen: set[int] = set()
    epochs = 0
    for active in history:
        seen.update(active)
        if seen >= everyone:
            epochs += 1
            seen.clear()
    return epochs + (1 if seen else 0)


# view bitmasks under which a robot of some chirality steps somewhere
_MOVING_BITS = frozenset(b for b in range(64) if any(ROUTES[ch][b][1] is not None for ch in ROUTES))


class _Board:
    """Per-vertex bookkeeping that lets a round touch only vertices that can move.

    Keeps the robots on each vertex, each occupied vertex's view bits, and
    the vertices whose view sends some chirality downward.  After a round
    only the vertices next to a vertex that gained or lost its last robot
    need their views recomputed.
    """

    def __init__(self, config: Configuration):
        self.routes = [ROUTES[ch] for ch in config.chiralities]
        self.robots: dict[GridPoint, list[int]] = {}
        for rid, p in enumerate(config.positions):
            self.robots.setdefault(p, []).append(rid)
        self.bits: dict[GridPoint, int] = {}
        self.movable: set[GridPoint] = set()
        for p in self.robots:
            self._refresh(p)

    def _refresh(self, p) -> None:
        robots = self.robots
        if p not in robots:
            self.bits.pop(p, None)
            self.movable.discard(p)
            return
        c, h = p
        b = (
            ((c, h + 2) in robots)
            | ((c + 1, h + 1) in robots) << 1
            | ((c + 1, h - 1) in robots) << 2
            | ((c, h - 2) in robots) << 3
            | ((c - 1, h - 1) in robots) << 4
            | ((c - 1, h + 1) in robots) << 5
        )
        self.bits[p] = b
        if b in _MOVING_BITS:
            self.movable.add(p)
        else:
            self.movable.discard(p)

    def moves(self, active) -> list[tuple[int, GridPoint, GridPoint]]:
        out = []
        routes, bits = self.routes, self.bits
        for p in self.movable:
            b = bits[p]
            for rid in self.robots[p]:
                if rid in active:
                    offset = routes[rid][b][1]
                    if offset is not None:
                        out.append((rid, p, GridPoint(p[0] + offset[0], p[1] + offset[1])))
        out.sort()
        return out

    def apply(self, moves) -> None:
        robots = self.robots
        changed = []
        for rid, p, q in moves:
            here = robots[p]
            here.remove(rid)
            if not here:
                del robots[p]
                changed.append(p)
            if q in robots:
                robots[q].append(rid)
            else:
                robots[q] = [rid]
                changed.append(q)
        stale = set()
        for c, h in changed:
            stale.update(((c, h), (c, h + 2), (c + 1, h + 1), (c + 1, h - 1), (c, h - 2), (c - 1, h - 1), (c - 1, h + 1)))
        for p in stale:
            self._refresh(p)


def _count_swaps(moves) -> int:
    steps = {(p, q) for _, p, q in moves}
    return sum(1 for p, q in steps if (q, p) in steps) // 2


def default_max_rounds(n: int) -> int:
    return 10 * (n + 2)


def run(
    initial: Configuration,
    scheduler: Scheduler,
    monitors: bool = True,
    max_rounds: int | None = None,
) -> Trace:
    """Run until gathered, a monitor fires, or ``max_rounds`` elapse."""
    if not is_connected(initial):
        raise DisconnectedError("disconnected initial configuration")
    n = initial.n
    if max_rounds is None:
        max_rounds = default_max_rounds(n)
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")

    trace = Trace(initial, [], Outcome.MAX_ROUNDS, 0, 0, scheduler.describe(), scheduler.seed, final=initial)
    if len(initial.occupancy) == 1:
        trace.outcome = Outcome.GATHERED
        return trace

    polygon = bounding_polygon(smallest_enclosing_rectangle(initial))
    config = initial
    m_before = occupancy_metrics(config.occupancy)
    everyone = frozenset(range(n))
    seen: set[int] = set()
    completed = 0
    epoch_top = m_before.top_hrow
    epoch_start_gathered = False

    board = _Board(initial)
    activations = scheduler.activations(n)
    for index in range(1, max_rounds + 1):
        active = next(activations)
        if not active or not active <= everyone:
            _check_active(config, active)
        moves = board.moves(active)
        if moves:
            positions = list(config.positions)
            for rid, _, q in moves:
                positions[rid] = q
            after = config.moved(positions)
            board.apply(moves)
            m_after = occupancy_metrics(after.occupancy)
            trace.swaps += _count_swaps(moves)
        else:
            after, m_after = config, m_before
        gathered = len(after.occupancy) == 1

        seen.update(active)
        boundary = seen >= everyone
        violations: list[Violation] = []
        if monitors:
            epoch = EpochState(boundary, epoch_top, epoch_start_gathered)
            violations = check_round_invariants(config, after, polygon, epoch, m_before, m_after, moves)
        if boundary:
            completed += 1
            seen.clear()
            epoch_top = m_after.top_hrow
            epoch_start_gathered = gathered

        trace.records.append(RoundRecord(index, active, moves, m_after, violations, boundary, config))
        config, m_before = after, m_after
        trace.rounds = index
        trace.epochs = completed + (1 if seen else 0)
        if violations:
            trace.outcome = Outcome.VIOLATION
            trace.detail = "; ".join(map(str, violations))
            break
        if gathered:
            trace.outcome = Outcome.GATHERED
            break
    trace.final = config
    return trace
