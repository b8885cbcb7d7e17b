"""Exception hierarchy shared by every module."""


class EcGrowthError(Exception):
    """Base class for all library errors."""


class SingularCurve(EcGrowthError, ValueError):
    pass


class BadReductionPrime(EcGrowthError, ValueError):
    pass


class EvenPrime(EcGrowthError, ValueError):
    pass


class SmallPrime(EcGrowthError, ValueError):
    pass


class CapExceeded(EcGrowthError, RuntimeError):
    """A computation would exceed a configured resource bound."""


class NotMultiplicative(EcGrowthError, ValueError):
    pass


class WildRamification(EcGrowthError, ValueError):
    pass


class SamePrime(EcGrowthError, ValueError):
    pass


class NoSuchExtension(EcGrowthError, ValueError):
    pass


class EmptyRamification(EcGrowthError, ValueError):
    pass


class InvalidIndex(EcGrowthError, ValueError):
    pass


class AssumptionViolated(EcGrowthError, ValueError):
    """Raised when a hypothesis flag required by a criterion is not set.

    ``flag`` names the offending assumption so callers (the CLI in
    particular) can report it in machine-readable form.
    """

    def __init__(self, flag, message=None):
        self.flag = flag
        text = f"assumption violated: {flag}"
        super().__init__(f"{text} ({message})" if message else text)


class NonIntegral(EcGrowthError, ArithmeticError):
    pass


class DuplicatePrime(EcGrowthError, ValueError):
    pass


class RamifiedOrBadPrime(EcGrowthError, ValueError):
    pass


class InvalidTorsionRank(EcGrowthError, ValueError):
    pass


class DomainError(EcGrowthError, ValueError):
    pass


class ParseError(EcGrowthError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")
