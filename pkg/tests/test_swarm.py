import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import RT3, connected_configs, connected_euclid, lattice_point
from trigather.grid import Chirality, GridPoint, neighbors
from trigather.swarm import (
    SER,
    Configuration,
    EmptyConfigurationError,
    bounding_polygon,
    from_placements,
    is_connected,
    is_gathered,
    metrics,
    occupied_connected,
    polygon_contains,
    smallest_enclosing_rectangle,
    still_connected,
    visibility_graph,
)


def cfg(*points):
    return from_placements([(p, 1) for p in points])


def test_from_placements_expands_counts_in_order():
    c = from_placements([((0, 0), 2), ((1, 1), 1)], [Chirality.MIRRORED, Chirality.STANDARD, Chirality.STANDARD])
    assert c.positions == ((0, 0), (0, 0), (1, 1))
    assert c.occupancy[(0, 0)] == 2
    assert c.chirality(0) is Chirality.MIRRORED


def test_from_placements_rejects_bad_input():
    with pytest.raises(ValueError):
        from_placements([((0, 1), 1)])
    with pytest.raises(ValueError):
        from_placements([((0, 0), 0)])
    with pytest.raises(ValueError):
        from_placements([((0, 0), 2)], [Chirality.STANDARD])


def test_position_of_unknown_robot():
    with pytest.raises(KeyError):
        cfg((0, 0)).position(3)


def test_translation_must_be_a_lattice_vector():
    c = cfg((0, 0), (0, 2))
    assert c.translated(1, 1).positions == ((1, 1), (1, 3))
    with pytest.raises(ValueError):
        c.translated(1, 0)


def test_visibility_examples():
    assert is_connected(cfg((0, 0), (0, 2)))
    assert len(visibility_graph(cfg((0, 0), (0, 2))).edges) == 1
    assert not is_connected(cfg((0, 0), (2, 0)))
    g = visibility_graph(cfg((0, 0), (1, 1), (2, 2)))
    assert is_connected(cfg((0, 0), (1, 1), (2, 2))) and len(g.edges) == 2


def test_visibility_graph_ignores_multiplicity():
    g = visibility_graph(from_placements([((0, 0), 3), ((0, 2), 2)]))
    assert g.vertices == {(0, 0), (0, 2)} and len(g.edges) == 1


@pytest.mark.parametrize("fn", [is_connected, metrics, smallest_enclosing_rectangle, visibility_graph])
def test_empty_configuration_is_an_error(fn):
    with pytest.raises(EmptyConfigurationError):
        fn(Configuration((), ()))


@given(st.lists(lattice_point(), min_size=1, max_size=12))
def test_connectivity_matches_euclidean_flood_fill(points):
    assert occupied_connected(set(points)) == connected_euclid(points)


def test_metrics_examples():
    m = metrics(cfg((0, 0), (1, 1), (3, 1)))
    assert (m.e_l, m.e_r, m.width_cols, m.top_hrow, m.depth_l, m.depth_r, m.height_hu) == (0, 3, 3, 1, 1, 0, 1)
    m = metrics(cfg((5, -3)))
    assert (m.width_cols, m.depth_l, m.depth_r, m.height_hu) == (0, 0, 0, 0)
    m = metrics(cfg((0, 0), (0, 2), (0, 4)))
    assert (m.width_cols, m.top_hrow, m.depth_l, m.depth_r, m.height_hu) == (0, 4, 4, 4, 4)
    assert math.isclose(metrics(cfg((0, 0), (2, 0))).width, RT3)


@given(connected_configs(), st.integers(-10, 10), st.integers(-10, 10))
def test_metrics_translate_with_the_configuration(config, dc, k):
    dh = dc + 2 * k
    a, b = metrics(config), metrics(config.translated(dc, dh))
    assert (b.e_l - a.e_l, b.e_r - a.e_r, b.top_hrow - a.top_hrow) == (dc, dc, dh)
    assert (a.width_cols, a.depth_l, a.depth_r, a.height_hu) == (b.width_cols, b.depth_l, b.depth_r, b.height_hu)


def test_is_gathered_examples():
    assert is_gathered(from_placements([((1, 1), 5)]))
    assert not is_gathered(cfg((0, 0), (0, 2)))
    assert is_gathered(cfg((7, -3)))


def test_ser_examples():
    assert smallest_enclosing_rectangle(cfg((0, 0))) == SER(0, 0, 0, 0)
    assert smallest_enclosing_rectangle(cfg((0, 0), (1, 1))) == SER(0, 1, 0, 2)
    assert smallest_enclosing_rectangle(cfg((0, 0), (2, 0))) == SER(0, 2, 0, 0)


@given(connected_configs())
def test_ser_left_corners_are_lattice_points(config):
    s = smallest_enclosing_rectangle(config)
    assert (s.col_min - s.hrow_min) % 2 == 0 and (s.col_min - s.hrow_max) % 2 == 0
    assert all(s.col_min <= c <= s.col_max and s.hrow_min <= h <= s.hrow_max for c, h in config.positions)


def test_polygon_examples():
    poly = bounding_polygon(SER(0, 4, 0, 4))
    assert polygon_contains(poly, GridPoint(2, 2))
    assert polygon_contains(poly, GridPoint(2, -2))
    assert not polygon_contains(poly, GridPoint(2, -4))
    assert poly.apex == (2, -2)


def euclid_polygon(ser):
    """ABPCDA built from angles: the sides leave B and C at 30 degrees below horizontal."""
    bx, by = ser.col_min * RT3 / 2, ser.hrow_min / 2
    cx = ser.col_max * RT3 / 2
    half = (cx - bx) / 2
    apex = (bx + half, by - half * math.tan(math.pi / 6))
    top = ser.hrow_max / 2
    # counter-clockwise: A, B, P, C, D
    return [(bx, top), (bx, by), apex, (cx, by), (cx, top)]


def inside_convex(poly, pt, eps=1e-9):
    x, y = pt
    # the box check matters when the polygon collapses to a vertical segment
    xs, ys = [v[0] for v in poly], [v[1] for v in poly]
    if not (min(xs) - eps <= x <= max(xs) + eps and min(ys) - eps <= y <= max(ys) + eps):
        return False
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) < -eps:
            return False
    return True


def test_polygon_agrees_with_euclidean_oracle_on_10000_points():
    rng = random.Random(20240611)
    checked = boundary_hits = 0
    while checked < 10_000:
        c0, h0 = rng.randint(-5, 5), rng.randint(-5, 5)
        h0 += (c0 - h0) % 2
        ser = SER(c0, c0 + rng.randint(0, 8), h0 - 0, h0 + 2 * rng.randint(0, 4))
        poly, oracle = bounding_polygon(ser), euclid_polygon(ser)
        for _ in range(50):
            c = rng.randint(ser.col_min - 2, ser.col_max + 2)
            h = rng.randint(ser.hrow_min - 8, ser.hrow_max + 2)
            h += (c - h) % 2
            expected = inside_convex(oracle, (c * RT3 / 2, h / 2))
            assert polygon_contains(poly, (c, h)) == expected, (ser, (c, h))
            boundary_hits += expected and not inside_convex(oracle, (c * RT3 / 2, h / 2), eps=-1e-9)
            checked += 1
    # points exactly on the boundary are where float and integer rules could split
    assert boundary_hits > 100


@given(connected_configs())
def test_every_robot_lies_in_its_own_polygon(config):
    poly = bounding_polygon(smallest_enclosing_rectangle(config))
    assert all(poly.contains(p) for p in config.positions)


@settings(max_examples=300)
@given(connected_configs(max_n=10), st.data())
def test_incremental_connectivity_matches_full_search(config, data):
    # arbitrary unit moves, not just algorithmic ones, so disconnection happens
    positions = list(config.positions)
    moves = []
    for rid in range(config.n):
        if data.draw(st.booleans()):
            q = data.draw(st.sampled_from(neighbors(positions[rid])))
            moves.append((rid, positions[rid], q))
            positions[rid] = q
    after = config.moved(positions).occupancy
    assert still_connected(after, moves) == occupied_connected(after)
