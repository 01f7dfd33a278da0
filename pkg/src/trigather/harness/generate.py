"""Seeded generators of connected starting configurations.

Randomness comes from ``random.Random(seed).random()`` (MT19937 seeded from
an int) and nothing else, because CPython guarantees that stream is stable
across versions and platforms.  Integer choices are ``int(random() * k)``.
"""
from __future__ import annotations

import random

from trigather.grid import Chirality, GridPoint
from trigather.swarm import Configuration

SHAPES = ("line", "blob", "staircase")

_OFFSETS = ((0, 2), (1, 1), (1, -1), (0, -2), (-1, -1), (-1, 1))
_CHIRALITIES = (Chirality.STANDARD, Chirality.MIRRORED)


def _pick(rng: random.Random, k: int) -> int:
    return int(rng.random() * k)


def _line(n, rng):
    return [GridPoint(0, 2 * i) for i in range(n)]


def _blob(n, rng):
    cells = [GridPoint(0, 0)]
    taken = {cells[0]}
    while len(cells) < n:
        c, h = cells[_pick(rng, len(cells))]
        dc, dh = _OFFSETS[_pick(rng, 6)]
        q = GridPoint(c + dc, h + dh)
        if q not in taken:
            taken.add(q)
            cells.append(q)
    return cells


def _staircase(n, rng):
    # diagonal treads with occasional vertical risers; first step is diagonal
    cells = [GridPoint(0, 0)]
    for i in range(1, n):
        c, h = cells[-1]
        if i > 1 and rng.random() < 0.5:
            cells.append(GridPoint(c, h + 2))
        else:
            cells.append(GridPoint(c + 1, h + 1))
    return cells


_BUILDERS = {"line": _line, "blob": _blob, "staircase": _staircase}


def generate_connected(n: int, seed: int, shape: str = "blob") -> Configuration:
    """``n`` robots on distinct vertices forming a connected visibility graph.

    Chiralities are drawn per robot from the same seeded stream, after the
    positions.
    """
    if n < 1:
        raise ValueError("need at least one robot")
    if shape not in _BUILDERS:
        raise ValueError(f"unknown shape {shape!r}; expected one of {', '.join(SHAPES)}")
    rng = random.Random(seed)
    cells = _BUILDERS[shape](n, rng)
    chiralities = tuple(_CHIRALITIES[_pick(rng, 2)] for _ in cells)
    return Configuration(tuple(cells), chiralities)
