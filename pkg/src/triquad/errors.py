"""Shared exception types.

Exit-code mapping in the CLI relies on the split between bad input
(NotSquarefree, precondition violations -> ValueError subclasses) and
resource limits (RangeExceeded, SearchExhausted, FactorBoundExceeded).
"""


class TriquadError(Exception):
    """Base class for all library-specific errors."""


class NotSquarefree(TriquadError, ValueError):
    """Input integer has a repeated prime factor."""


class NotQuadraticResidue(TriquadError, ValueError):
    """Quartic residue symbol requested for a quadratic non-residue."""


class SearchExhausted(TriquadError, RuntimeError):
    """A bounded Diophantine search ran out of room without a solution."""


class FactorBoundExceeded(TriquadError, RuntimeError):
    """Factorization gave up: a cofactor survived all configured methods."""


class RangeExceeded(TriquadError, RuntimeError):
    """Requested computation is above the configured enumeration ceiling."""


class NotApplicable(TriquadError, ValueError):
    """Operation undefined for this input (e.g. wrong unit norm)."""


class UnknownCase(TriquadError):
    """The requested invariant is only pinned for specific case shapes."""


class Inconclusive(TriquadError):
    """Numeric precision ladder exhausted without an exact decision."""


class RouteUnavailable(TriquadError):
    """No formula route applies to this input."""


class IntegrityError(TriquadError):
    """Two independent computation routes disagreed; never masked."""
