"""Robot configurations, the visibility graph and the global shape metrics.

Robots carry ids (their index) and a fixed chirality.  Several robots may
share a vertex; the simulator counts them even though the robots cannot.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from trigather.grid import Chirality, GridPoint, validate

_OFFSETS = ((0, 2), (1, 1), (1, -1), (0, -2), (-1, -1), (-1, 1))


class EmptyConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    positions: tuple[GridPoint, ...]
    chiralities: tuple[Chirality, ...]
    occupancy: Counter = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.positions) != len(self.chiralities):
            raise ValueError("positions and chiralities differ in length")
        object.__setattr__(self, "occupancy", Counter(self.positions))

    @property
    def n(self) -> int:
        return len(self.positions)

    def chirality(self, rid: int) -> Chirality:
        return self.chiralities[rid]

    def position(self, rid: int) -> GridPoint:
        if not 0 <= rid < len(self.positions):
            raise KeyError(f"unknown robot id {rid}")
        return self.positions[rid]

    def occupied(self) -> set[GridPoint]:
        return set(self.occupancy)

    def moved(self, new_positions: Sequence[GridPoint]) -> "Configuration":
        return Configuration(tuple(new_positions), self.chiralities)

    def translated(self, dcol: int, dhrow: int) -> "Configuration":
        if (dcol - dhrow) % 2:
            raise ValueError("translation must be a lattice vector")
        return self.moved([GridPoint(c + dcol, h + dhrow) for c, h in self.positions])

    def placements(self) -> list[tuple[GridPoint, int, Chirality]]:
        """Group robots by (vertex, chirality), in first-appearance order."""
        counts: dict[tuple[GridPoint, Chirality], int] = {}
        for p, ch in zip(self.positions, self.chiralities):
            counts[(p, ch)] = counts.get((p, ch), 0) + 1
        return [(p, k, ch) for (p, ch), k in counts.items()]


def from_placements(
    placements: Iterable[tuple], chirality: Chirality | Sequence[Chirality] = Chirality.STANDARD
) -> Configuration:
    """Build a configuration from ``(point, count)`` pairs.

    Ids are handed out in input order.  ``chirality`` is either one value for
    every robot or one value per resulting robot.
    """
    positions: list[GridPoint] = []
    for point, count in placements:
        p = validate(point)
        if count < 1:
            raise ValueError(f"count for {tuple(p)} must be >= 1, got {count}")
        positions.extend([p] * count)
    if isinstance(chirality, Chirality):
        chiralities = (chirality,) * len(positions)
    else:
        chiralities = tuple(chirality)
        if len(chiralities) != len(positions):
            raise ValueError("need one chirality per robot")
    return Configuration(tuple(positions), chiralities)


def _require_nonempty(config: Configuration):
    if not config.positions:
        raise EmptyConfigurationError("configuration has no robots")


@dataclass(frozen=True)
class VisibilityGraph:
    vertices: frozenset[GridPoint]
    edges: frozenset[frozenset[GridPoint]]


def visibility_graph(config: Configuration) -> VisibilityGraph:
    _require_nonempty(config)
    occ = config.occupancy
    edges = set()
    for c, h in occ:
        for dc, dh in _OFFSETS:
            q = (c + dc, h + dh)
            if q in occ:
                edges.add(frozenset((GridPoint(c, h), GridPoint(*q))))
    return VisibilityGraph(frozenset(occ), frozenset(edges))


def occupied_connected(occupied) -> bool:
    """Graph search over a collection of occupied vertices."""
    if not occupied:
        return False
    start = next(iter(occupied))
    seen = {start}
    stack = [start]
    pop, push, mark = stack.pop, stack.append, seen.add
    while stack:
        c, h = pop()
        for q in ((c, h + 2), (c + 1, h + 1), (c + 1, h - 1), (c, h - 2), (c - 1, h - 1), (c - 1, h + 1)):
            if q in occupied and q not in seen:
                mark(q)
                push(q)
    return len(seen) == len(occupied)


def _single_arc(bits: int) -> bool:
    # bits follow DIRECTIONS order, which walks the six neighbours clockwise
    rises = sum(1 for i in range(6) if bits >> i & 1 and not bits >> ((i - 1) % 6) & 1)
    return bits == 63 or rises == 1


_SINGLE_ARC = tuple(_single_arc(b) for b in range(64))


def _ring_bits(occupied, c: int, h: int) -> int:
    return (
        ((c, h + 2) in occupied)
        | ((c + 1, h + 1) in occupied) << 1
        | ((c + 1, h - 1) in occupied) << 2
        | ((c, h - 2) in occupied) << 3
        | ((c - 1, h - 1) in occupied) << 4
        | ((c - 1, h + 1) in occupied) << 5
    )


def still_connected(after, moves) -> bool:
    """Connectivity after one round of unit moves, given it held before.

    ``after`` is the new occupancy and ``moves`` the ``(id, from, to)``
    steps.  Vertices that kept a robot anchor every newly occupied neighbour.
    A vacated vertex only threatens paths through it; when no two vacated
    vertices touch and each one's occupied neighbours form a single arc of
    its hexagon, those paths can be rerouted along the arc.  Anything else
    falls back to a full search.
    """
    vacated = {p for _, p, _ in moves if p not in after}
    if not vacated:
        return True
    for c, h in vacated:
        if _ring_bits(vacated, c, h) or not _SINGLE_ARC[_ring_bits(after, c, h)]:
            return occupied_connected(after)
    return True


def is_connected(config: Configuration) -> bool:
    _require_nonempty(config)
    return occupied_connected(config.occupancy)


def is_gathered(config: Configuration) -> bool:
    return len(config.occupancy) == 1


class Metrics(NamedTuple):
    e_l: int
    e_r: int
    width_cols: int
    top_hrow: int
    depth_l: int
    depth_r: int
    height_hu: int

    @property
    def width(self) -> float:
        return self.width_cols * 3**0.5 / 2

    def as_dict(self) -> dict[str, int]:
        # trace files carry everything except the height
        return {
            "e_l": self.e_l,
            "e_r": self.e_r,
            "width_cols": self.width_cols,
            "top_hrow": self.top_hrow,
            "depth_l": self.depth_l,
            "depth_r": self.depth_r,
        }


def occupancy_metrics(occupied) -> Metrics:
    """Metrics of a nonempty collection of occupied ``(col, hrow)`` vertices."""
    if not occupied:
        raise EmptyConfigurationError("configuration has no robots")
    cols, rows = zip(*occupied)
    e_l, e_r = min(cols), max(cols)
    top, bottom = max(rows), min(rows)
    low_l = min([h for c, h in occupied if c == e_l])
    low_r = low_l if e_r == e_l else min([h for c, h in occupied if c == e_r])
    return Metrics(e_l, e_r, e_r - e_l, top, top - low_l, top - low_r, top - bottom)


def metrics(config: Configuration) -> Metrics:
    _require_nonempty(config)
    return occupancy_metrics(config.occupancy)


@dataclass(frozen=True)
class SER:
    """Axis-aligned rectangle around the initial configuration, in grid units."""

    col_min: int
    col_max: int
    hrow_min: int
    hrow_max: int

    @property
    def A(self) -> GridPoint:
        return GridPoint(self.col_min, self.hrow_max)

    @property
    def B(self) -> GridPoint:
        return GridPoint(self.col_min, self.hrow_min)

    @property
    def C(self) -> GridPoint:
        return GridPoint(self.col_max, self.hrow_min)

    @property
    def D(self) -> GridPoint:
        return GridPoint(self.col_max, self.hrow_max)


def smallest_enclosing_rectangle(config: Configuration) -> SER:
    """Bounding box of the occupied vertices, widened vertically to the lattice.

    Column bounds are exact.  If the left corners fall between lattice rows,
    the bottom edge moves down and the top edge moves up by one half-row.
    With an odd column span the right-hand corners then sit half a row off
    the lattice, which the containment rule does not care about.
    """
    _require_nonempty(config)
    cols = [p.col for p in config.occupancy]
    rows = [p.hrow for p in config.occupancy]
    col_min, col_max = min(cols), max(cols)
    hrow_min, hrow_max = min(rows), max(rows)
    if (hrow_min - col_min) % 2:
        hrow_min -= 1
    if (hrow_max - col_min) % 2:
        hrow_max += 1
    return SER(col_min, col_max, hrow_min, hrow_max)


@dataclass(frozen=True)
class BoundingPolygon:
    """The region ABPCDA: the rectangle plus a triangle hanging below BC.

    The triangle's sides leave B and C at 30 degrees below horizontal.  One
    column is sqrt(3)/2 wide, so each column of horizontal distance from the
    nearer of B, C lets the boundary drop by exactly one half-row.
    """

    ser: SER

    @property
    def apex(self) -> tuple[Fraction, Fraction]:
        s = self.ser
        half_span = Fraction(s.col_max - s.col_min, 2)
        return (s.col_min + half_span, s.hrow_min - half_span)

    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        s = self.ser
        return [tuple(map(Fraction, s.A)), tuple(map(Fraction, s.B)), self.apex,
                tuple(map(Fraction, s.C)), tuple(map(Fraction, s.D))]

    def contains(self, p) -> bool:
        s = self.ser
        c, h = p[0], p[1]
        if c < s.col_min or c > s.col_max or h > s.hrow_max:
            return False
        return h >= s.hrow_min - min(c - s.col_min, s.col_max - c)


def bounding_polygon(ser: SER) -> BoundingPolygon:
    return BoundingPolygon(ser)


def polygon_contains(poly: BoundingPolygon, p) -> bool:
    return poly.contains(p)
