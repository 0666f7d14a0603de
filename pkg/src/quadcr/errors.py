"""Exception hierarchy shared across the package.

The command line maps these onto exit codes, so library code should raise
the most specific class that applies rather than bare ValueError.
"""


class QuadCRError(Exception):
    """Base class for all package errors."""


class DocumentError(QuadCRError):
    """A JSON/CSV document failed schema validation or could not be read."""


class StructureError(QuadCRError):
    """A graph input is structurally invalid (non-planar face list, bad face)."""


class IncoherentFaceError(StructureError):
    """An edge labeling violates the parallelogram condition on some face."""

    def __init__(self, face_index, message):
        self.face_index = face_index
        super().__init__(f"face {face_index}: {message}")


class SpectralDataError(QuadCRError):
    """Marked-point data violates a construction invariant."""


class DegenerateFaceError(QuadCRError):
    """A face's two axis directions nearly coincide; its weight would be 0 or infinite."""

    def __init__(self, face_index, message):
        self.face_index = face_index
        super().__init__(f"face {face_index}: {message}")


class PoleError(QuadCRError):
    """Plain evaluation requested exactly at a pole; carries the pole order."""

    def __init__(self, order, message="evaluation at a pole"):
        self.order = order
        super().__init__(f"{message} (order {order})")


class ResidueOrderError(QuadCRError):
    """A residue was requested at a point that is not a first-order pole."""

    def __init__(self, order):
        self.order = order
        super().__init__(f"not a first-order pole (order {order})")


class PreconditionError(QuadCRError):
    """A stated precondition of an operation does not hold for the given data."""


class DomainError(QuadCRError):
    """A vertex field is missing a value that the operator needs."""


class ExtensionError(QuadCRError):
    """Holomorphic extension failed: input not harmonic or integration inconsistent."""

    def __init__(self, message, face_index=None, vertex=None):
        self.face_index = face_index
        self.vertex = vertex
        super().__init__(message)


class NotMOrderedError(QuadCRError):
    """Marked points cannot be renumbered into the required circular block order."""


class AdjacencyError(QuadCRError):
    """Two faces do not share exactly one edge."""


class SingularSystemError(QuadCRError):
    """A boundary-value linear system is rank deficient.

    Attributes:
        rank: numerical rank of the interior system.
        size: number of interior unknowns.
        null_vector: witness vector with A @ v ~ 0 (None when too large to compute).
    """

    def __init__(self, rank, size, null_vector=None):
        self.rank = rank
        self.size = size
        self.null_vector = null_vector
        super().__init__(f"singular interior system: rank {rank} of {size}")
