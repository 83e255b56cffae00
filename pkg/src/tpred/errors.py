"""Exception types shared across the package."""


class TpredError(Exception):
    """Base class for all tpred errors."""


class DegenerateLayout(TpredError, ValueError):
    """Layout violates a structural invariant (too few, coincident, or out-of-box points)."""


class InvalidPlan(TpredError, ValueError):
    """Plan is not a permutation of the layout's target indices."""


class InvalidPrefix(TpredError, ValueError):
    """Prefix contains duplicate or out-of-range target indices."""


class EmptyCostList(TpredError, ValueError):
    """A cost vector was empty where at least one entry is required."""


class NonFiniteCost(TpredError, ValueError):
    """A cost vector contained NaN or infinity."""


class HorizonExceeded(TpredError, ValueError):
    """Requested split index t exceeds the layout's horizon T."""


class GenerationStalled(TpredError, RuntimeError):
    """Rejection sampling ran out of retries (separation too large for the box)."""


class DegenerateVariance(TpredError, ValueError):
    """Correlation undefined: an input series has zero variance or too few points."""


class InvalidArgument(TpredError, ValueError):
    """An argument violates an operation's precondition."""
