"""The robot's local decision rule under one-axis agreement and 1-hop vision.

A robot sees which of its six neighbours are occupied, expressed in its own
frame.  Up/down are shared by everyone; left/right depend on the robot's
chirality.  From that 6-bit view it either stays, terminates, or steps down
to one of its three lower neighbours.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from trigather.grid import DIRECTIONS, Chirality, Direction, GridPoint, globalize, localize
from trigather.swarm import Configuration

_BIT = {d: i for i, d in enumerate(DIRECTIONS)}


class View(NamedTuple):
    up: bool = False
    up_left: bool = False
    up_right: bool = False
    down: bool = False
    down_left: bool = False
    down_right: bool = False

    def sees(self, d: Direction) -> bool:
        return bool(self.bits >> _BIT[d] & 1)

    @property
    def bits(self) -> int:
        b = 0
        for d, occupied in zip(_VIEW_FIELDS, self):
            if occupied:
                b |= 1 << _BIT[d]
        return b

    @classmethod
    def from_bits(cls, bits: int) -> "View":
        return cls(*(bool(bits >> _BIT[d] & 1) for d in _VIEW_FIELDS))

    @classmethod
    def of(cls, *occupied: Direction) -> "View":
        return cls.from_bits(sum(1 << _BIT[d] for d in set(occupied)))


_VIEW_FIELDS = (
    Direction.UP,
    Direction.UP_LEFT,
    Direction.UP_RIGHT,
    Direction.DOWN,
    Direction.DOWN_LEFT,
    Direction.DOWN_RIGHT,
)


def all_views() -> list[View]:
    return [View.from_bits(b) for b in range(64)]


class Action(enum.Enum):
    TERMINATE = "terminate"
    STAY = "stay"
    MOVE = "move"


@dataclass(frozen=True)
class Decision:
    action: Action
    target: Direction | None = None

    def __post_init__(self):
        if (self.action is Action.MOVE) != (self.target is not None):
            raise ValueError("a target is required for moves and only for moves")
        if self.target is not None and self.target.is_upward:
            raise ValueError(f"upward target {self.target}")

    def __str__(self):
        if self.target is None:
            return self.action.value
        return f"move:{self.target.name}"


TERMINATE = Decision(Action.TERMINATE)
STAY = Decision(Action.STAY)


def move(target: Direction) -> Decision:
    return Decision(Action.MOVE, target)


class NamedPositions(NamedTuple):
    v1: Direction
    v2: Direction | None
    v3: Direction | None


class NotExtremeError(ValueError):
    pass


def _left_empty(v: View) -> bool:
    return not (v.up_left or v.down_left)


def _right_empty(v: View) -> bool:
    return not (v.up_right or v.down_right)


def is_extreme(v: View) -> bool:
    return not v.up and (_left_empty(v) or _right_empty(v))


def named_positions(v: View) -> NamedPositions:
    """Name the lower neighbour v1 and the non-empty half's diagonals v2, v3.

    v2/v3 are None when both open halves are empty.
    """
    if not is_extreme(v):
        raise NotExtremeError("v1/v2/v3 are only defined for extreme views")
    if not _right_empty(v):
        return NamedPositions(Direction.DOWN, Direction.DOWN_RIGHT, Direction.UP_RIGHT)
    if not _left_empty(v):
        return NamedPositions(Direction.DOWN, Direction.DOWN_LEFT, Direction.UP_LEFT)
    return NamedPositions(Direction.DOWN, None, None)


def decide(v: View) -> Decision:
    if not is_extreme(v):
        if v.down_left and v.down_right and not (v.up or v.up_left or v.up_right):
            return move(Direction.DOWN)
        return STAY

    named = named_positions(v)
    on1 = v.down
    on2 = named.v2 is not None and v.sees(named.v2)
    on3 = named.v3 is not None and v.sees(named.v3)
    if not (on1 or on2 or on3):
        return TERMINATE
    if on3 and not on2:
        return STAY
    if on1 and not on3:
        return move(Direction.DOWN)
    return move(named.v2)


def local_view(config: Configuration, rid: int) -> View:
    """Occupancy of the robot's neighbours, in the robot's own frame."""
    c, h = config.position(rid)
    chirality = config.chirality(rid)
    occ = config.occupancy
    seen = [localize(d, chirality) for d in DIRECTIONS if (c + d.value[0], h + d.value[1]) in occ]
    return View.of(*seen)


class Destination(NamedTuple):
    decision: Decision
    point: GridPoint


def destination(config: Configuration, rid: int) -> Destination:
    """Where the robot goes if activated now; ``point`` is its own vertex unless it moves."""
    decision = decide(local_view(config, rid))
    p = config.position(rid)
    if decision.target is None:
        return Destination(decision, p)
    dc, dh = globalize(decision.target, config.chirality(rid)).value
    return Destination(decision, GridPoint(p.col + dc, p.hrow + dh))


def mirror_bits(bits: int) -> int:
    out = 0
    for d in DIRECTIONS:
        if bits >> _BIT[d] & 1:
            out |= 1 << _BIT[d.mirrored()]
    return out


DECISIONS: tuple[Decision, ...] = tuple(decide(View.from_bits(b)) for b in range(64))


def global_view_bits(occupied, c: int, h: int) -> int:
    """Bitmask (``DIRECTIONS`` order) of occupied neighbours of (c, h)."""
    b = 0
    if (c, h + 2) in occupied:
        b |= 1
    if (c + 1, h + 1) in occupied:
        b |= 2
    if (c + 1, h - 1) in occupied:
        b |= 4
    if (c, h - 2) in occupied:
        b |= 8
    if (c - 1, h - 1) in occupied:
        b |= 16
    if (c - 1, h + 1) in occupied:
        b |= 32
    return b


MIRRORED_BITS = tuple(mirror_bits(b) for b in range(64))


def _routes(chirality: Chirality) -> tuple[tuple[Decision, tuple[int, int] | None], ...]:
    out = []
    for gbits in range(64):
        lbits = MIRRORED_BITS[gbits] if chirality is Chirality.MIRRORED else gbits
        decision = DECISIONS[lbits]
        target = decision.target
        out.append((decision, None if target is None else globalize(target, chirality).value))
    return tuple(out)


# (decision, global step) per global view bitmask, routed through the local frame
ROUTES = {ch: _routes(ch) for ch in Chirality}
EXTREME_BITS = frozenset(b for b in range(64) if is_extreme(View.from_bits(b)))
