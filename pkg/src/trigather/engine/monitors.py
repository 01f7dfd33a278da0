"""Runtime checks of the correctness invariants, evaluated round by round.

Violations are returned as data; the engine decides whether to abort.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from trigather.rule import EXTREME_BITS, global_view_bits
from trigather.swarm import BoundingPolygon, Configuration, Metrics, occupancy_metrics, still_connected

CONNECTIVITY = "connectivity"
WIDTH = "width"
TOP_LAYER = "top_layer"
EDGE_DEPTH = "edge_depth"
POLYGON = "polygon"
EDGE_NON_EXTREME = "edge_non_extreme"
EXTREME_TARGET = "extreme_target"
EPOCH_DESCENT = "epoch_descent"

ALL_MONITORS = (
    CONNECTIVITY,
    WIDTH,
    TOP_LAYER,
    EDGE_DEPTH,
    POLYGON,
    EDGE_NON_EXTREME,
    EXTREME_TARGET,
    EPOCH_DESCENT,
)


@dataclass(frozen=True)
class Violation:
    monitor: str
    detail: str

    def __str__(self):
        return f"{self.monitor}: {self.detail}"


class EpochState(NamedTuple):
    """Where the current epoch stands after the round being checked."""

    boundary: bool
    top_at_start: int
    start_gathered: bool


def check_round_invariants(
    before: Configuration,
    after: Configuration,
    polygon: BoundingPolygon,
    epoch: EpochState | None = None,
    before_metrics: Metrics | None = None,
    after_metrics: Metrics | None = None,
    moves: list | None = None,
) -> list[Violation]:
    """Compare the configurations on either side of one round.

    ``polygon`` is the bounding polygon of the run's initial configuration.
    Robots are matched by id, so ``after`` must come from ``before`` by moves.
    ``before`` is assumed to have passed the same checks: connectivity is
    re-established incrementally and only robots that moved are tested for
    containment.  ``moves`` may pass the round's
    ``(id, from, to)`` triples when the caller already has them.
    """
    out: list[Violation] = []
    mb = before_metrics or occupancy_metrics(before.occupancy)
    ma = after_metrics or occupancy_metrics(after.occupancy)
    occ_before = before.occupancy

    if moves is None:
        moved = [(rid, p, q) for rid, (p, q) in enumerate(zip(before.positions, after.positions)) if p != q]
    else:
        moved = moves

    if moved and not still_connected(after.occupancy, moved):
        out.append(Violation(CONNECTIVITY, "visibility graph disconnected"))
    if ma.width_cols > mb.width_cols:
        out.append(Violation(WIDTH, f"width grew {mb.width_cols} -> {ma.width_cols}"))
    if ma.top_hrow > mb.top_hrow:
        out.append(Violation(TOP_LAYER, f"top layer rose {mb.top_hrow} -> {ma.top_hrow}"))
    if ma.e_l == mb.e_l and ma.depth_l > mb.depth_l:
        out.append(Violation(EDGE_DEPTH, f"left edge depth grew {mb.depth_l} -> {ma.depth_l}"))
    if ma.e_r == mb.e_r and ma.depth_r > mb.depth_r:
        out.append(Violation(EDGE_DEPTH, f"right edge depth grew {mb.depth_r} -> {ma.depth_r}"))

    extreme_at: dict = {}
    for rid, p, q in moved:
        if not polygon.contains(q):
            out.append(Violation(POLYGON, f"robot {rid} left the bounding polygon at {tuple(q)}"))
        extreme = extreme_at.get(p)
        if extreme is None:
            extreme = extreme_at[p] = global_view_bits(occ_before, p[0], p[1]) in EXTREME_BITS
        if not extreme and p[0] in (mb.e_l, mb.e_r):
            out.append(Violation(EDGE_NON_EXTREME, f"non-extreme robot {rid} on an edge line moved {tuple(p)} -> {tuple(q)}"))
        if extreme and q not in occ_before:
            out.append(Violation(EXTREME_TARGET, f"extreme robot {rid} moved onto empty vertex {tuple(q)}"))

    if epoch is not None and epoch.boundary and not epoch.start_gathered:
        if not ma.top_hrow < epoch.top_at_start:
            out.append(Violation(EPOCH_DESCENT, f"top layer stayed at {ma.top_hrow} for a whole epoch"))
    return out
