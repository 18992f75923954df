"""Exception types shared across the package.

Domain errors signal well-defined degenerate inputs (zero-length functions,
non-invertible warps, ...) and map to exit code 3 in the CLI; input errors
cover file parsing and validation and map to exit code 2.
"""


class ElasticFdaError(Exception):
    """Base class for all package-specific errors."""


class InputError(ElasticFdaError):
    """Malformed input data (CSV parsing, invalid grids, bad flags)."""


class DomainError(ElasticFdaError):
    """Mathematically degenerate input for the requested operation."""


class ZeroLength(DomainError):
    """The function has zero length (all derivative cells are exactly zero).

    Callers handle constant functions with the plain L2 distance convention
    and an identity warp.
    """


class NotInvertible(DomainError):
    """The warp is not strictly increasing, so it has no inverse."""


class BasepointMismatch(DomainError):
    """Two functions that must share their value at zero do not."""


class NotPositiveSlope(DomainError):
    """A function required to have strictly positive slope has a cell <= 0."""


class LevelTooDeep(DomainError):
    """Requested construction depth exceeds the exact-arithmetic budget."""
