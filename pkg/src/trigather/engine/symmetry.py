"""Two robots whose frames are point-symmetric can never gather.

Both robots agree on the direction of the axis but one frame is the other
rotated by 180 degrees.  Placed on adjacent vertices they see exactly the
same local view, so any deterministic rule makes them take mirror-image
steps: if one moves by ``m`` the other moves by ``-m``, and the gap between
them changes by ``2m``, which is never zero.  The check below plays out
each possible choice under full synchronism and records what happens.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from trigather.grid import DIRECTIONS, Direction, GridPoint, direction_between, step

GATHERED = "gathered"
DISCONNECTED = "disconnected"
FIXED_POINT = "fixed point"
TWO_CYCLE = "2-cycle"
UNRESOLVED = "unresolved"

# Rotation of each robot's frame, in 60-degree steps, and where it starts.
FRAMES = (0, 3)
START = (GridPoint(0, 0), GridPoint(1, 1))


@dataclass(frozen=True)
class Choice:
    """Stay, or turn ``turn`` sixths of a circle away from the seen robot and step."""

    turn: int | None

    def __str__(self):
        if self.turn is None:
            return "stay"
        if self.turn == 0:
            return "toward"
        if self.turn == 3:
            return "away"
        return f"turn {self.turn * 60}"

    def local_move(self, seen: Direction) -> Direction | None:
        return None if self.turn is None else seen.rotated(self.turn)


CHOICES = (Choice(None),) + tuple(Choice(k) for k in range(6))


@dataclass
class ChoiceResult:
    choice: Choice
    outcome: str
    rounds: int
    history: list[tuple[GridPoint, GridPoint]] = field(repr=False)

    @property
    def gathered(self) -> bool:
        return self.outcome == GATHERED


@dataclass
class SymmetryReport:
    horizon: int
    results: list[ChoiceResult]

    @property
    def none_gathered(self) -> bool:
        return not any(r.gathered for r in self.results)

    @property
    def all_classified(self) -> bool:
        return all(r.outcome in (DISCONNECTED, FIXED_POINT, TWO_CYCLE) for r in self.results)


def _to_local(d: Direction, frame: int) -> Direction:
    return d.rotated(-frame)


def _to_global(d: Direction, frame: int) -> Direction:
    return d.rotated(frame)


def local_views(positions) -> list[Direction | None]:
    """Where each robot sees the other, in its own frame (None if out of sight)."""
    views = []
    for me, frame in enumerate(FRAMES):
        d = direction_between(positions[me], positions[1 - me])
        views.append(None if d is None else _to_local(d, frame))
    return views


def play(policy, horizon: int) -> tuple[str, int, list]:
    """Run the two robots fully synchronously under ``policy(local_seen) -> local move``.

    Returns the outcome, the round it was decided in, and the positions seen.
    """
    positions = START
    history = [positions]
    for rnd in range(1, horizon + 1):
        views = local_views(positions)
        new = []
        for me, frame in enumerate(FRAMES):
            move = policy(views[me])
            new.append(positions[me] if move is None else step(positions[me], _to_global(move, frame)))
        positions = tuple(new)
        history.append(positions)
        if positions[0] == positions[1]:
            return GATHERED, rnd, history
        if direction_between(*positions) is None:
            return DISCONNECTED, rnd, history
        if positions == history[-2]:
            return FIXED_POINT, rnd, history
        if len(history) >= 3 and positions == history[-3]:
            return TWO_CYCLE, rnd, history
    return UNRESOLVED, horizon, history


def symmetry_deadlock_check(horizon: int = 20) -> SymmetryReport:
    """Classify each of the seven symmetric choices (stay, or one of six moves)."""
    return SymmetryReport(horizon, [ChoiceResult(c, *play(c.local_move, horizon)) for c in CHOICES])


def every_rule_fails(horizon: int = 20) -> bool:
    """No map from "where I see the other robot" to a choice ever gathers.

    A robot that sees nobody stays put, since it has nothing to react to.
    All ``7 ** 6`` such rules are tried.
    """
    options = [None] + list(DIRECTIONS)
    for table in itertools.product(options, repeat=6):
        rule = dict(zip(DIRECTIONS, table))
        if play(lambda seen: None if seen is None else rule[seen], horizon)[0] == GATHERED:
            return False
    return True
