"""Exception hierarchy shared by every pierce4 module."""

from typing import Any, Dict, Optional


class Pierce4Error(Exception):
    """Base class for all pierce4 errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Serialize for inclusion in a report."""
        return {"error": type(self).__name__, "message": self.message, "details": self.details}


# ============ Input errors ============

class InvalidGeometry(Pierce4Error):
    """Non-finite coordinates, non-convex polygons or degenerate maps."""


class InvalidInstance(Pierce4Error):
    """Instance violates its invariants (family counts, cross-intersection)."""


# ============ geometry / approximation ============

class DegenerateBody(Pierce4Error):
    """Body has (numerically) zero width in the requested direction."""


class DegenerateSupport(Pierce4Error):
    """Chord profile does not vanish at the bottom or top supporting line."""


class InvalidChord(Pierce4Error):
    """Requested chord length is outside (0, m]."""


class DegenerateDirection(Pierce4Error):
    """Side direction is (numerically) parallel to the slab direction."""


class NoRootFound(Pierce4Error):
    """No homothetic inscribed/circumscribed pair within the ratio slack."""


# ============ piercing ============

class HypothesisViolation(Pierce4Error):
    """Two members of different families are disjoint."""


class DegenerateLines(Pierce4Error):
    """Transversal lines are parallel."""


class RatioExceeded(Pierce4Error):
    """Region is larger than twice the piercing parallelogram."""


class PipelineFailure(Pierce4Error):
    """Neither the transversal nor the fallback branch produced a certificate."""


# ============ oracles ============

class TooLarge(Pierce4Error):
    """Brute-force search requested beyond desk-scale limits."""


class RejectionBudgetExceeded(Pierce4Error):
    """Instance generator ran out of rejection attempts."""
