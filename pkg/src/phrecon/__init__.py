"""Directional persistence diagrams of plane graphs and exact
reconstruction of the embedding from a metered diagram oracle."""

from .edge_recon import (
    BowTie,
    IndegreeQuery,
    edge_exists,
    enumerate_compatible_graphs,
    global_bowtie_width,
    indegree_from_diagrams,
    pair_directions,
    reconstruct_edges,
    reconstruct_edges_detail,
)
from .errors import (
    CoincidentPoints,
    DegenerateDirection,
    DegeneratePoints,
    DuplicateHeights,
    EnumerationOverflow,
    GenerationFailed,
    ParallelLines,
    PhreconError,
    RetryExhausted,
    WrongCardinality,
)
from .geometry import (
    TOLERANCE,
    Direction,
    Line,
    Point2,
    filtration_line,
    height,
    intersect_lines,
    line_angle_mod_pi,
    rotate,
)
from .persistence import (
    CachingDiagramOracle,
    Diagram,
    DiagramOracle,
    PersistencePair,
    diagram_from_json,
    diagram_to_json,
    lower_star_diagrams,
    oracle_query,
)
from .plane_graph import (
    PlaneGraph,
    connected_components,
    graph_from_json,
    graph_to_json,
    indegree_direct,
    load_graph,
    random_plane_graph,
    save_graph,
    validate,
)
from .render import render_svg
from .vertex_recon import (
    LineFamily,
    lines_from_dgm0,
    locate_point,
    match_and_intersect,
    reconstruct_vertices,
    third_direction,
    triple_intersections,
)

__version__ = "0.1.0"
