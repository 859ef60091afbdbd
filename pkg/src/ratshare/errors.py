"""Exception types shared across the package."""


class RatshareError(Exception):
    """Base class for all errors raised by this package."""


class MixedFieldsError(RatshareError):
    """Elements of two different prime fields were combined."""


class ZeroInverseError(RatshareError):
    """Multiplicative inverse of zero was requested."""


class DuplicateXError(RatshareError):
    """Two interpolation points share the same x coordinate."""


class BadThresholdError(RatshareError):
    """Threshold k outside 1..n."""


class OutOfRangeParticipantError(RatshareError):
    """Participant id outside 1..n."""


class EmptyCoalitionError(RatshareError):
    """A minimal coalition must contain at least one participant."""


class EmptyCoalitionListError(RatshareError):
    """At least one coalition is required to build an access structure."""


class TooManyParticipantsError(RatshareError):
    """More shares requested than distinct nonzero evaluation points."""


class AuditTooLargeError(RatshareError):
    """Exhaustive audit parameters exceed the supported bounds."""


class BadProbabilityError(RatshareError):
    """A probability fell outside [0, 1]."""


class TooLargeError(RatshareError):
    """Enumeration bounds exceeded for an exact analysis."""


class DegenerateTieError(RatshareError):
    """A participant's common-good value exactly equals the cost."""


class AxiomViolationError(RatshareError):
    """Greedy utility parameters fail the ordinal preference axioms."""


class InvalidMoveError(RatshareError):
    """A disclosure move is illegal at the current node."""


class ConfigError(RatshareError):
    """Malformed or inconsistent game configuration."""
