"""Independent oracles and hypothesis strategies shared by the tests.

The oracles work in Euclidean coordinates rather than lattice offsets, so
they do not share code or conventions with the package under test.
"""
from __future__ import annotations

import math

from hypothesis import strategies as st

from trigather.grid import Chirality, Direction
from trigather.harness.generate import SHAPES, generate_connected
from trigather.swarm import Configuration

RT3 = math.sqrt(3)


def euclid(p):
    return (p[0] * RT3 / 2, p[1] / 2)


def adjacent_euclid(p, q) -> bool:
    (x1, y1), (x2, y2) = euclid(p), euclid(q)
    return abs(math.hypot(x1 - x2, y1 - y2) - 1.0) < 1e-9


def connected_euclid(points) -> bool:
    """Flood fill using unit Euclidean distance as the adjacency test."""
    pts = list(set(points))
    if not pts:
        return False
    reached = {pts[0]}
    frontier = [pts[0]]
    while frontier:
        p = frontier.pop()
        for q in pts:
            if q not in reached and adjacent_euclid(p, q):
                reached.add(q)
                frontier.append(q)
    return len(reached) == len(pts)


def lattice_point():
    return st.tuples(st.integers(-20, 20), st.integers(-20, 20)).map(
        lambda t: (t[0], t[1] if (t[0] - t[1]) % 2 == 0 else t[1] + 1)
    )


@st.composite
def connected_configs(draw, max_n=12, shapes=SHAPES):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    shape = draw(st.sampled_from(shapes))
    config = generate_connected(n, seed, shape)
    flip = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    chir = tuple(Chirality.MIRRORED if f else Chirality.STANDARD for f in flip)
    return Configuration(config.positions, chir)


# Hand transcription of the decision rule, written over direction names.

U, UL, UR, D, DL, DR = "U", "UL", "UR", "D", "DL", "DR"
NAMES = {
    Direction.UP: U,
    Direction.UP_LEFT: UL,
    Direction.UP_RIGHT: UR,
    Direction.DOWN: D,
    Direction.DOWN_LEFT: DL,
    Direction.DOWN_RIGHT: DR,
}

# The extreme branch, one row per occupied subset of {v1, v2, v3}.
EXTREME_TABLE = {
    frozenset(): ("terminate", None),
    frozenset({"v3"}): ("stay", None),
    frozenset({"v1", "v3"}): ("stay", None),
    frozenset({"v1"}): ("move", "v1"),
    frozenset({"v1", "v2"}): ("move", "v1"),
    frozenset({"v2"}): ("move", "v2"),
    frozenset({"v2", "v3"}): ("move", "v2"),
    frozenset({"v1", "v2", "v3"}): ("move", "v2"),
}


def transcribed(occ: set[str]) -> tuple[str, str | None]:
    """Hand transcription of the rule over direction names."""
    if U not in occ and (not occ & {UL, DL} or not occ & {UR, DR}):
        side = "R" if occ & {UR, DR} else "L" if occ & {UL, DL} else None
        named = {"v1": D}
        if side:
            named.update(v2="D" + side, v3="U" + side)
        s = frozenset(k for k, pos in named.items() if pos in occ)
        action, which = EXTREME_TABLE[s]
        return action, named[which] if which else None
    if {DL, DR} <= occ and not occ & {U, UL, UR}:
        return "move", D
    return "stay", None
