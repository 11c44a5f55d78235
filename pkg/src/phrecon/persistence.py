"""Lower-star persistence of height filtrations on plane graphs.

`lower_star_diagrams` runs a union-find sweep over the simplices ordered by
height: each vertex births a component at its height; an edge arrives at the
height of its upper endpoint and either merges two components (a dim-0 death,
killing the younger birth per the elder rule) or closes a cycle (a dim-1
birth that never dies, since the complex has no 2-simplices). Diagonal pairs
produced by this trace are retained: a component born at the same height the
merging edge arrives yields a (h, h) point, and those points are counted by
the indegree machinery downstream.

`DiagramOracle` wraps a hidden graph and meters every diagram request; the
reconstruction modules are written against this interface only.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateDirection
from .geometry import TOLERANCE, Direction, height
from .plane_graph import PlaneGraph

INFINITY = math.inf


class PersistencePair(NamedTuple):
    birth: float
    death: float  # math.inf for classes that never die

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class Diagram:
    """Directional persistence diagram: dim-0 and dim-1 pairs, canonically
    sorted by (birth, death)."""

    direction: Direction
    dim0: tuple[PersistencePair, ...]
    dim1: tuple[PersistencePair, ...]

    @property
    def n_components(self) -> int:
        return sum(1 for p in self.dim0 if p.is_infinite)

    def births0(self) -> list[float]:
        return [p.birth for p in self.dim0]


def lower_star_diagrams(g: PlaneGraph, s: Direction, tol: float = TOLERANCE) -> Diagram:
    """Zero- and one-dimensional diagrams of the height filtration along s.

    s is normalized on entry. Simplices are ordered by (height, dimension,
    tie-break), so a vertex precedes the edges arriving at its height and
    same-height edges are processed by ascending (lower-endpoint height,
    edge index).

    Raises DegenerateDirection when two vertex heights coincide within tol.
    """
    u = Direction(*s).normalized()
    heights = [height(v, u) for v in g.vertices]

    order = sorted(range(g.n), key=heights.__getitem__)
    for a, b in zip(order, order[1:]):
        if abs(heights[a] - heights[b]) <= tol:
            i, j = min(a, b), max(a, b)
            raise DegenerateDirection(i, j, u)

    # event key: (height, dim, lower endpoint height, index)
    events: list[tuple[float, int, float, int]] = [
        (heights[v], 0, 0.0, v) for v in range(g.n)
    ]
    for e_idx, (a, b) in enumerate(g.sorted_edges()):
        lo, hi = sorted((heights[a], heights[b]))
        events.append((hi, 1, lo, e_idx))
    events.sort()

    edges = g.sorted_edges()
    parent = list(range(g.n))
    root_birth: dict[int, float] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    dim0: list[PersistencePair] = []
    dim1: list[PersistencePair] = []
    for h, dim, _lo, idx in events:
        if dim == 0:
            root_birth[idx] = heights[idx]
        else:
            a, b = edges[idx]
            ra, rb = find(a), find(b)
            if ra == rb:
                dim1.append(PersistencePair(h, INFINITY))
                continue
            # elder rule: the class with the smaller birth survives
            if root_birth[ra] <= root_birth[rb]:
                elder, younger = ra, rb
            else:
                elder, younger = rb, ra
            dim0.append(PersistencePair(root_birth[younger], h))
            parent[younger] = elder
            del root_birth[younger]

    for root, b in root_birth.items():
        dim0.append(PersistencePair(b, INFINITY))

    dim0.sort()
    dim1.sort()
    return Diagram(u, tuple(dim0), tuple(dim1))


class DiagramOracle:
    """Metered diagram access to a hidden plane graph.

    Every query (including a repeat of an earlier direction) is computed
    afresh and logged; the count and the log are updated atomically so they
    never disagree under concurrent use.
    """

    def __init__(self, graph: PlaneGraph, tol: float = TOLERANCE):
        self._graph = graph
        self._tol = tol
        self._log: list[Direction] = []
        self._lock = threading.Lock()

    @property
    def query_count(self) -> int:
        return len(self._log)

    @property
    def query_log(self) -> tuple[Direction, ...]:
        return tuple(self._log)

    def query(self, s: Direction) -> Diagram:
        u = Direction(*s).normalized()
        with self._lock:
            self._log.append(u)
        return self._compute(u)

    def _compute(self, u: Direction) -> Diagram:
        return lower_star_diagrams(self._graph, u, self._tol)


class CachingDiagramOracle(DiagramOracle):
    """Oracle variant that memoizes computed diagrams per direction.

    The cache reduces real work only: repeated directions still count
    against the query budget exactly as for the plain oracle.
    """

    def __init__(self, graph: PlaneGraph, tol: float = TOLERANCE):
        super().__init__(graph, tol)
        self._cache: dict[Direction, Diagram] = {}

    def _compute(self, u: Direction) -> Diagram:
        if u not in self._cache:
            self._cache[u] = lower_star_diagrams(self._graph, u, self._tol)
        return self._cache[u]


def oracle_query(o: DiagramOracle, s: Direction) -> Diagram:
    """Query the oracle for direction s (normalized internally)."""
    return o.query(s)


def diagram_to_json(d: Diagram) -> str:
    """Canonical Diagram JSON; null encodes an infinite death."""

    def enc(p: PersistencePair):
        return [p.birth, None if math.isinf(p.death) else p.death]

    payload = {
        "direction": [d.direction.dx, d.direction.dy],
        "dim0": [enc(p) for p in d.dim0],
        "dim1": [enc(p) for p in d.dim1],
    }
    return json.dumps(payload, separators=(", ", ": ")) + "\n"


def diagram_from_json(text: str) -> Diagram:
    data = json.loads(text)
    direction = Direction(*(float(c) for c in data["direction"]))

    def dec(pairs):
        return tuple(
            sorted(
                PersistencePair(float(b), INFINITY if d is None else float(d))
                for b, d in pairs
            )
        )

    return Diagram(direction, dec(data["dim0"]), dec(data["dim1"]))
