"""Exception hierarchy shared by all modules."""


class VandersumError(Exception):
    """Base class for every error raised by this package."""


class VariantMismatch(VandersumError, TypeError):
    pass


class ModulusMismatch(VandersumError, ValueError):
    pass


class PoleError(VandersumError, ZeroDivisionError):
    """A closed-form denominator vanishes at the requested point.

    ``violations`` lists every constraint that failed, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("point is not admissible: " + "; ".join(self.violations))


class WorkloadGuardExceeded(VandersumError, RuntimeError):
    pass


class DimensionMismatch(VandersumError, ValueError):
    pass


class NotSquare(DimensionMismatch):
    pass


class ParameterRangeError(VandersumError, ValueError):
    """Parameters fall outside the hypothesis region of a lemma."""


class PreconditionViolated(VandersumError, ValueError):
    pass


class ExhaustedRetries(VandersumError, RuntimeError):
    pass


class ConfigError(VandersumError, ValueError):
    pass
