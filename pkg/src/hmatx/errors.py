"""Exception types shared across the package."""


class SingularEvaluationError(ValueError):
    """Kernel evaluated at coincident points without a self-block rule."""


class PivotExhaustionError(RuntimeError):
    """Partially pivoted ACA cannot continue: no usable pivot left."""


class FallbackNeeded(RuntimeError):
    """Vector ACA found only (near-)singular pivot subblocks.

    Callers switch the block over to the randomized SVD.
    """


class FactorizationError(RuntimeError):
    """H-LU hit a singular dense diagonal leaf; carries the block path."""


class SnapshotError(IOError):
    """Base class for snapshot load failures."""


class SnapshotVersionError(SnapshotError):
    """Snapshot file has an unsupported format version."""


class SnapshotCorruptError(SnapshotError):
    """Snapshot payload failed its checksum."""
