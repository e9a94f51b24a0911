"""Exception types raised across the package."""


class GtslamError(Exception):
    """Base class for all package-specific errors."""


class DegenerateProjectionError(GtslamError):
    """A back-projected ray does not hit the ground plane in front of the camera."""


class InvalidImageError(GtslamError):
    """Image shape, dtype, or channel layout violates an operation's contract."""


class EstimationError(GtslamError):
    """Base class for rigid-transform estimation failures."""


class InsufficientMatchesError(EstimationError):
    """Too few point pairs to estimate a transform and its covariance."""


class DegenerateGeometryError(EstimationError):
    """Point configuration is rank-deficient (e.g. all weight on one point)."""


class GraphError(GtslamError):
    """Factor-graph structure violation: unknown node/session, bad covariance."""


class UnconstrainedGaugeError(GraphError):
    """Some node is not connected to any prior; optimization would be singular."""


class SessionStateError(GtslamError):
    """Pipeline session lifecycle misuse (start without finalize, etc.)."""


class VocabularyError(GtslamError):
    """Vocabulary training or usage failure, including cross-vocabulary scoring."""


class DatasetFormatError(GtslamError):
    """On-disk dataset does not conform to the documented layout."""


class RenderError(GtslamError):
    """Synthetic render request falls outside the generated world."""


class EvalError(GtslamError):
    """Evaluation inputs are inconsistent (length mismatch, missing truth)."""
