import math

import numpy as np
import pytest

from phrecon import (
    Diagram,
    DiagramOracle,
    Direction,
    DuplicateHeights,
    Line,
    ParallelLines,
    PersistencePair,
    PlaneGraph,
    Point2,
    WrongCardinality,
    height,
    intersect_lines,
    lines_from_dgm0,
    locate_point,
    match_and_intersect,
    random_plane_graph,
    reconstruct_vertices,
    third_direction,
    triple_intersections,
)
from phrecon.errors import PhreconError
from phrecon.vertex_recon import AXIS_X, AXIS_Y

from conftest import assert_points_close

INF = math.inf


def dgm0(direction, births):
    return Diagram(
        Direction(*direction).normalized(),
        tuple(sorted(PersistencePair(b, INF) for b in births)),
        (),
    )


def family(direction, births):
    return lines_from_dgm0(dgm0(direction, births))


def test_lines_from_single_birth():
    f = family((1.0, 0.0), [0.25])
    assert len(f) == 1
    assert f.lines[0].contains(Point2(0.25, 123.0))


def test_lines_from_empty_diagram():
    assert len(family((1.0, 0.0), [])) == 0


def test_lines_sorted_by_offset():
    f = family((0.0, 1.0), [2.0, 0.0, 1.0])
    assert f.offsets() == [0.0, 1.0, 2.0]
    for off in (0.0, 1.0, 2.0):
        assert any(l.contains(Point2(-5.0, off)) for l in f.lines)


def test_lines_duplicate_births_rejected():
    with pytest.raises(DuplicateHeights):
        family((1.0, 0.0), [1.0, 1.0 + 1e-12])


def test_third_direction_appendix_box():
    f1 = family((1.0, 0.0), [0.0, 2.0])  # w = 2
    f2 = family((0.0, 1.0), [0.0, 1.0])  # h = 1
    s3 = third_direction(f1, f2)
    assert s3.dx == pytest.approx(-1.0 / math.sqrt(17.0), abs=1e-12)
    assert s3.dy == pytest.approx(4.0 / math.sqrt(17.0), abs=1e-12)


def test_third_direction_unit_box():
    s3 = third_direction(family((1, 0), [0.0, 1.0]), family((0, 1), [0.0, 1.0]))
    assert s3.dx == pytest.approx(-1.0 / math.sqrt(5.0), abs=1e-12)
    assert s3.dy == pytest.approx(2.0 / math.sqrt(5.0), abs=1e-12)


def test_third_direction_full_width_not_adjacent_gap():
    # x-offsets {0, 0.2, 2}: the width is 2, not the largest adjacent gap 1.8
    f1 = family((1, 0), [0.0, 0.2, 2.0])
    f2 = family((0, 1), [0.0, 1.0, 5.0])
    s3 = third_direction(f1, f2)
    assert s3 == Direction(2.0, 0.5).perp().normalized()


def test_third_direction_single_vertex_fallback():
    s3 = third_direction(family((1, 0), [0.3]), family((0, 1), [0.7]))
    assert s3 == Direction(math.sqrt(0.5), math.sqrt(0.5))


def test_third_direction_checks_axes():
    with pytest.raises(ValueError):
        third_direction(family((0, 1), [0.0, 1.0]), family((0, 1), [0.0, 1.0]))


def test_match_and_intersect_single():
    target = Point2(0.3, 0.7)
    s3 = Direction(math.sqrt(0.5), math.sqrt(0.5))
    f2 = family((0, 1), [0.7])
    f3 = family(s3, [height(target, s3)])
    left = family((1, 0), [0.3]).lines[0]
    pts = match_and_intersect(f2, f3, left)
    assert_points_close(pts, [target], tol=1e-12)


def test_match_and_intersect_2x2_grid():
    # true vertices (0,0) and (2,1) on the grid x in {0,2}, y in {0,1}
    truth = [Point2(0.0, 0.0), Point2(2.0, 1.0)]
    f1 = family((1, 0), [0.0, 2.0])
    f2 = family((0, 1), [0.0, 1.0])
    s3 = third_direction(f1, f2)
    f3 = family(s3, [height(p, s3) for p in truth])
    got = match_and_intersect(f2, f3, f1.lines[0])
    assert_points_close(got, truth)
    assert triple_intersections(f1, f2, f3) == set(got)


def test_match_equals_triple_intersections_on_random_instance():
    g = random_plane_graph(4, 0.5, 18)
    o = DiagramOracle(g)
    f1 = lines_from_dgm0(o.query(AXIS_X))
    f2 = lines_from_dgm0(o.query(AXIS_Y))
    s3 = third_direction(f1, f2)
    f3 = lines_from_dgm0(o.query(s3))
    matched = match_and_intersect(f2, f3, f1.lines[0])
    brute = triple_intersections(f1, f2, f3)
    assert len(matched) == len(brute) == 4
    for p in matched:
        assert any(abs(p.x - q.x) <= 1e-9 and abs(p.y - q.y) <= 1e-9 for q in brute)


def test_triple_intersections_disjoint_families():
    f1 = family((1, 0), [0.0])
    f2 = family((0, 1), [0.0])
    f3 = family((math.sqrt(0.5), math.sqrt(0.5)), [5.0])  # misses the origin
    assert triple_intersections(f1, f2, f3) == set()


def test_locate_point_examples():
    assert locate_point(dgm0((1, 0), [3.0]), dgm0((0, 1), [7.0])) == Point2(3.0, 7.0)
    assert locate_point(dgm0((1, 0), [0.0]), dgm0((0, 1), [0.0])) == Point2(0.0, 0.0)
    # solve x = 1, (3x + 4y)/5 = 1  =>  y = 1/2
    p = locate_point(dgm0((1, 0), [1.0]), dgm0((0.6, 0.8), [1.0]))
    assert p.x == pytest.approx(1.0, abs=1e-12)
    assert p.y == pytest.approx(0.5, abs=1e-12)


def test_locate_point_errors():
    with pytest.raises(WrongCardinality):
        locate_point(dgm0((1, 0), [1.0, 2.0]), dgm0((0, 1), [0.0]))
    with pytest.raises(ParallelLines):
        locate_point(dgm0((1, 0), [1.0]), dgm0((2, 0), [0.0]))


def test_reconstruct_single_vertex():
    o = DiagramOracle(PlaneGraph([(3.0, 7.0)], []))
    assert reconstruct_vertices(o) == [Point2(3.0, 7.0)]
    assert o.query_count == 3


def test_reconstruct_appendix_graph(appendix_graph):
    o = DiagramOracle(appendix_graph)
    got = reconstruct_vertices(o)
    assert o.query_count == 3
    assert o.query_log[0] == Direction(1.0, 0.0)
    assert o.query_log[1] == Direction(0.0, 1.0)
    want = sorted(appendix_graph.vertices, key=lambda p: p.y)
    assert_points_close(got, want)


def test_reconstruct_100_random_vertices():
    rng = np.random.default_rng(77)
    xs = (np.arange(100) + 0.1 + 0.8 * rng.random(100)) / 100.0
    ys = (np.arange(100) + 0.1 + 0.8 * rng.random(100)) / 100.0
    pts = list(zip(xs.tolist(), rng.permutation(ys).tolist()))
    o = DiagramOracle(PlaneGraph(pts, []))
    got = reconstruct_vertices(o)
    assert o.query_count == 3
    assert_points_close(sorted(got), sorted(pts), tol=1e-6)


def test_reconstruct_rejects_degenerate_hidden_graph():
    o = DiagramOracle(PlaneGraph([(0.0, 0.0), (0.0, 1.0)], []))  # shared x
    with pytest.raises(PhreconError):
        reconstruct_vertices(o)


def test_vertex_existence_part_two_on_instances():
    # every third-family line meets an intersection of the first two
    for seed in range(8):
        g = random_plane_graph(2 + seed, 0.5, seed)
        o = DiagramOracle(g)
        f1 = lines_from_dgm0(o.query(AXIS_X))
        f2 = lines_from_dgm0(o.query(AXIS_Y))
        s3 = third_direction(f1, f2)
        f3 = lines_from_dgm0(o.query(s3))
        grid = [intersect_lines(a, b) for a in f1.lines for b in f2.lines]
        for line in f3.lines:
            assert any(line.contains(p) for p in grid)


def test_vertex_localization_inside_box():
    # no third-direction line crosses two horizontal lines inside the
    # bounding box of the grid
    for seed in range(8):
        g = random_plane_graph(3 + seed, 0.0, seed + 50)
        o = DiagramOracle(g)
        f1 = lines_from_dgm0(o.query(AXIS_X))
        f2 = lines_from_dgm0(o.query(AXIS_Y))
        s3 = third_direction(f1, f2)
        xs, ys = f1.offsets(), f2.offsets()
        f3 = lines_from_dgm0(o.query(s3))
        for line in f3.lines:
            hits = 0
            for y in ys:
                p = intersect_lines(line, Line(Direction(0.0, 1.0), y))
                if xs[0] - 1e-9 <= p.x <= xs[-1] + 1e-9:
                    hits += 1
            assert hits <= 1
