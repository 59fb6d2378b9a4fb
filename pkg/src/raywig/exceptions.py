"""Exception hierarchy.

Every error carries the CLI exit code it maps to: 2 for bad input,
3 for degenerate geometry, 4 for maps that violate the isometry hypothesis.
"""


class RaywigError(Exception):
    exit_code = 1


class InputError(RaywigError, ValueError):
    exit_code = 2


class DimensionError(InputError):
    pass


class ZeroVectorError(InputError):
    pass


class DomainError(InputError):
    pass


class ParseError(InputError):
    pass


class UnsupportedQueryError(InputError, KeyError):
    """A table-backed ray map was queried on a ray it does not contain."""

    def __str__(self):
        return Exception.__str__(self)


class DegenerateGeometryError(RaywigError, ValueError):
    exit_code = 3


class OrthogonalityError(DegenerateGeometryError):
    """Phase comparison requested between (numerically) orthogonal states."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateGeodesicError(DegenerateGeometryError):
    pass


class DegenerateTriangleError(DegenerateGeometryError):
    pass


class NotInPcError(DegenerateGeometryError):
    """The state is orthogonal to the reference vector of a lift."""


class OnBoundaryError(DegenerateGeometryError):
    """The third ray lies on the great circle where Im(Delta) vanishes."""


class ConsistencyError(DegenerateGeometryError):
    """Two routes to the same geometric quantity disagree beyond tolerance."""


class NotIsometryError(RaywigError):
    exit_code = 4


class ChiInconsistencyError(NotIsometryError):
    pass


class SearchExhaustedError(NotIsometryError):
    pass
