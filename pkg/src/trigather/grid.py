"""Integer coordinates on the infinite triangular grid.

The agreed axis is drawn vertically.  A vertex is addressed by ``(col, hrow)``
where ``col`` counts vertical lines (spaced sqrt(3)/2 apart) and ``hrow`` is
the height measured in half edge-lengths.  Only points with
``col % 2 == hrow % 2`` exist on the grid.

All decision logic works on these integers; Euclidean coordinates exist for
drawing only.
"""
from __future__ import annotations

import enum
import math
from typing import NamedTuple


class InvalidPointError(ValueError):
    """Raised for coordinates that violate the lattice parity rule."""


class GridPoint(NamedTuple):
    col: int
    hrow: int


def is_valid(p) -> bool:
    return (p[0] - p[1]) % 2 == 0


def validate(p) -> GridPoint:
    """Return ``p`` as a GridPoint, raising InvalidPointError off-lattice."""
    col, hrow = int(p[0]), int(p[1])
    if (col - hrow) % 2:
        raise InvalidPointError(f"({col}, {hrow}) is not a grid point: col and hrow differ in parity")
    return GridPoint(col, hrow)


class Direction(enum.Enum):
    UP = (0, 2)
    UP_RIGHT = (1, 1)
    DOWN_RIGHT = (1, -1)
    DOWN = (0, -2)
    DOWN_LEFT = (-1, -1)
    UP_LEFT = (-1, 1)

    @property
    def offset(self) -> tuple[int, int]:
        return self.value

    @property
    def is_upward(self) -> bool:
        return self.value[1] > 0

    def mirrored(self) -> "Direction":
        return _OFFSET_TO_DIRECTION[(-self.value[0], self.value[1])]

    def opposite(self) -> "Direction":
        return _OFFSET_TO_DIRECTION[(-self.value[0], -self.value[1])]

    def rotated(self, steps: int) -> "Direction":
        """Rotate counter-clockwise by ``steps`` multiples of 60 degrees."""
        i = _CCW_ORDER.index(self)
        return _CCW_ORDER[(i + steps) % 6]


# Documented iteration order for neighbors().
DIRECTIONS: tuple[Direction, ...] = (
    Direction.UP,
    Direction.UP_RIGHT,
    Direction.DOWN_RIGHT,
    Direction.DOWN,
    Direction.DOWN_LEFT,
    Direction.UP_LEFT,
)

_OFFSET_TO_DIRECTION = {d.value: d for d in Direction}
_CCW_ORDER = (
    Direction.UP,
    Direction.UP_LEFT,
    Direction.DOWN_LEFT,
    Direction.DOWN,
    Direction.DOWN_RIGHT,
    Direction.UP_RIGHT,
)


class Chirality(enum.Enum):
    """Handedness of a robot's local frame. Up and down are always agreed."""

    STANDARD = "S"
    MIRRORED = "M"


def neighbors(p) -> list[GridPoint]:
    """The six adjacent vertices of ``p`` in ``DIRECTIONS`` order."""
    p = validate(p)
    return [GridPoint(p.col + dc, p.hrow + dh) for dc, dh in (d.value for d in DIRECTIONS)]


def step(p, d: Direction) -> GridPoint:
    dc, dh = d.value
    return GridPoint(p[0] + dc, p[1] + dh)


def to_euclidean(p) -> tuple[float, float]:
    return (p[0] * math.sqrt(3) / 2, p[1] / 2)


def direction_between(p, q) -> Direction | None:
    return _OFFSET_TO_DIRECTION.get((q[0] - p[0], q[1] - p[1]))


def localize(d: Direction, chirality: Chirality) -> Direction:
    """Global direction as seen in a robot's local frame."""
    if chirality is Chirality.MIRRORED:
        return d.mirrored()
    return d


def globalize(d: Direction, chirality: Chirality) -> Direction:
    """Inverse of localize(); the mirror map is an involution."""
    if chirality is Chirality.MIRRORED:
        return d.mirrored()
    return d
