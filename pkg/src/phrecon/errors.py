"""Exception types shared across the toolkit.

All errors derive from PhreconError so callers (notably the CLI) can map
them to exit codes in one place.
"""


class PhreconError(Exception):
    """Base class for all toolkit errors."""


class ParallelLines(PhreconError):
    """Two lines have (numerically) parallel normals and do not intersect."""


class CoincidentPoints(PhreconError):
    """An operation needing two distinct points received equal ones."""


class DegeneratePoints(PhreconError):
    """A vertex set contains coincident points."""


class GenerationFailed(PhreconError):
    """Random graph generation exhausted its resampling budget."""


class DegenerateDirection(PhreconError):
    """Two vertices share a height along the queried direction.

    Carries the indices of the offending vertex pair.
    """

    def __init__(self, i: int, j: int, direction=None):
        self.i = i
        self.j = j
        self.direction = direction
        msg = f"vertices {i} and {j} share a height along the filtration direction"
        if direction is not None:
            msg += f" {direction}"
        super().__init__(msg)


class DuplicateHeights(PhreconError):
    """Two diagram births coincide, so filtration lines are not distinct."""


class WrongCardinality(PhreconError):
    """A diagram does not contain the expected number of features."""


class RetryExhausted(PhreconError):
    """Bow-tie construction kept hitting degenerate heights after 64 shrinks."""


class EnumerationOverflow(PhreconError):
    """Compatible-graph enumeration refused to run above its size safeguard."""
