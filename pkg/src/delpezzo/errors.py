"""Exception hierarchy for the delpezzo library."""


class DelPezzoError(Exception):
    """Base class for all library errors."""


class LinearCone(DelPezzoError):
    """The degree equals one of the weights and the pure power is present,
    so the hypersurface is a coordinate hyperplane in disguise."""


class NonInteger(DelPezzoError):
    """A quantity that must be an integer (e.g. a Milnor number) is not."""


class NotCoprime(DelPezzoError):
    """A quotient-type weight shares a factor with the order."""


class NoEliminationMonomial(DelPezzoError):
    """A vertex lies on the surface but no monomial of the form x_i^m * x_j
    exists; the support cannot come from a quasismooth hypersurface."""


class EmptyRestriction(DelPezzoError):
    """An edge with nontrivial stabiliser has empty restricted support;
    the hypersurface is not well formed."""


class TruncationTooSmall(DelPezzoError):
    """A power-series computation ran into its truncation bound; retry with
    a larger bound."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class AdaptationExhausted(DelPezzoError):
    """Newton adaptation did not terminate within the iteration cap.  A
    certified lower bound for the threshold is attached."""

    def __init__(self, message, lower_bound):
        super().__init__(message)
        self.lower_bound = lower_bound


class IrrationalRoot(DelPezzoError):
    """A repeated face root is irrational; the exact path cannot continue."""

    def __init__(self, message, lower_bound=None):
        super().__init__(message)
        self.lower_bound = lower_bound


class NonIntegralSlope(DelPezzoError):
    """A degenerate face has non-integral slope in both orientations; a
    monomial substitution is required before shifting."""


class MissingGermData(DelPezzoError):
    """A condition tag declares an extra singular point but supplies no germ."""


class Unsupported(DelPezzoError):
    """The configuration is outside the implemented families
    (e.g. a0 == a1 away from the two shipped patterns)."""


class DatasetParse(DelPezzoError):
    """The classification dataset file is malformed."""


class InvalidInput(DelPezzoError):
    """User-supplied data violates a precondition."""
