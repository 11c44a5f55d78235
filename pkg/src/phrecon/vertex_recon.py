"""Vertex recovery from three directional dim-0 diagrams.

The dim-0 births of a diagram put every vertex on a known filtration line.
Two axis-aligned diagrams give an n-by-n grid of candidate locations; a
third direction, chosen from the grid's box geometry so that each of its
lines can meet the grid in at most one point, singles out the true vertices.
The matching between the second and third family reduces to sorting both
along the leftmost vertical line, so the whole phase is O(n log n) after
the three oracle queries.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass

from .errors import DuplicateHeights, ParallelLines, WrongCardinality
from .geometry import (
    TOLERANCE,
    Direction,
    Line,
    Point2,
    filtration_line,
    intersect_lines,
)
from .persistence import Diagram, DiagramOracle

AXIS_X = Direction(1.0, 0.0)
AXIS_Y = Direction(0.0, 1.0)

#: Third direction used when a single vertex leaves no box geometry to
#: exploit; any direction independent of both axes works.
_SINGLE_VERTEX_DIRECTION = Direction(math.sqrt(0.5), math.sqrt(0.5))


@dataclass(frozen=True)
class LineFamily:
    """Parallel filtration lines of one direction, ascending by offset."""

    direction: Direction
    lines: tuple[Line, ...]

    def __len__(self) -> int:
        return len(self.lines)

    def offsets(self) -> list[float]:
        return [line.offset for line in self.lines]


def lines_from_dgm0(d: Diagram, tol: float = TOLERANCE) -> LineFamily:
    """One filtration line per dim-0 birth, sorted by offset.

    Raises DuplicateHeights when two births coincide within tol (the
    diagram then cannot pin one line per vertex).
    """
    births = sorted(d.births0())
    for a, b in zip(births, births[1:]):
        if abs(a - b) <= tol:
            raise DuplicateHeights(
                f"dim-0 births {a} and {b} coincide for direction {d.direction}"
            )
    lines = sorted(
        (filtration_line(d.direction, b) for b in births), key=lambda l: l.offset
    )
    return LineFamily(d.direction, tuple(lines))


def third_direction(f1: LineFamily, f2: LineFamily) -> Direction:
    """Direction whose filtration lines meet the f1-x-f2 grid once each.

    f1 must come from (1, 0) (vertical lines) and f2 from (0, 1)
    (horizontal lines). With w the full width of the f1 offsets and h the
    smallest adjacent gap of the f2 offsets, any line perpendicular to
    (w, h/2) rises less than h while crossing the grid box, so it cannot
    meet two horizontal lines inside it. Returns the unit perpendicular
    with positive y-component.
    """
    if abs(f1.direction.dx - 1.0) > 1e-12 or abs(f1.direction.dy) > 1e-12:
        raise ValueError(f"f1 must be the (1, 0) family, got {f1.direction}")
    if abs(f2.direction.dx) > 1e-12 or abs(f2.direction.dy - 1.0) > 1e-12:
        raise ValueError(f"f2 must be the (0, 1) family, got {f2.direction}")
    n = len(f1)
    if n != len(f2) or n < 1:
        raise ValueError(f"families must have equal positive size, got {n}, {len(f2)}")
    if n == 1:
        return _SINGLE_VERTEX_DIRECTION
    xs = f1.offsets()
    ys = f2.offsets()
    w = xs[-1] - xs[0]
    h = min(b - a for a, b in zip(ys, ys[1:]))
    return Direction(w, h / 2.0).perp().normalized()


def match_and_intersect(
    f2: LineFamily, f3: LineFamily, leftmost_of_f1: Line
) -> list[Point2]:
    """Pair the i-th horizontal line with the i-th third-direction line.

    f2 is ordered by y-intercept; f3 by the y-coordinate of each line's
    intersection with the leftmost vertical line. Under the third-direction
    guarantee these orders agree with the vertices' y-order, so matched
    intersections are exactly the vertices. Linear after the two sorts.
    """
    if len(f2) != len(f3):
        raise ValueError(f"family sizes differ: {len(f2)} vs {len(f3)}")
    by_y = sorted(f2.lines, key=lambda l: l.offset)
    by_left = sorted(
        f3.lines, key=lambda l: intersect_lines(l, leftmost_of_f1).y
    )
    return [intersect_lines(a, b) for a, b in zip(by_y, by_left)]


def locate_point(dgm0_a: Diagram, dgm0_b: Diagram) -> Point2:
    """Position of the sole vertex from two single-feature diagrams."""
    for d in (dgm0_a, dgm0_b):
        if len(d.dim0) != 1:
            raise WrongCardinality(
                f"expected exactly one dim-0 feature, got {len(d.dim0)}"
            )
    la = filtration_line(dgm0_a.direction, dgm0_a.dim0[0].birth)
    lb = filtration_line(dgm0_b.direction, dgm0_b.dim0[0].birth)
    return intersect_lines(la, lb)


def reconstruct_vertices(o: DiagramOracle, tol: float = TOLERANCE) -> list[Point2]:
    """Recover all vertex coordinates using exactly three oracle queries.

    Queries (1, 0), (0, 1), and the derived third direction, in that
    order. Returns the vertices sorted by ascending y-coordinate.
    """
    d1 = o.query(AXIS_X)
    d2 = o.query(AXIS_Y)
    f1 = lines_from_dgm0(d1, tol)
    f2 = lines_from_dgm0(d2, tol)
    s3 = third_direction(f1, f2)
    d3 = o.query(s3)
    if len(f1) == 1:
        return [locate_point(d1, d2)]
    f3 = lines_from_dgm0(d3, tol)
    return match_and_intersect(f2, f3, f1.lines[0])


def triple_intersections(
    f1: LineFamily, f2: LineFamily, f3: LineFamily, tol: float = TOLERANCE
) -> set[Point2]:
    """All points where one line of each family meet, within tol.

    Brute-force reference for `match_and_intersect`: intersects every
    f1/f2 pair and keeps the points lying on some f3 line. Test and
    verification use only.
    """
    result: set[Point2] = set()
    if not f3.lines:
        return result
    normal3 = f3.lines[0].normal
    offsets3 = [line.offset for line in f3.lines]
    for a in f1.lines:
        for b in f2.lines:
            try:
                p = intersect_lines(a, b)
            except ParallelLines:
                continue
            q = p.x * normal3.dx + p.y * normal3.dy
            k = bisect_left(offsets3, q)
            near = offsets3[max(0, k - 1) : k + 1]
            if any(abs(q - off) <= tol for off in near):
                result.add(p)
    return result
