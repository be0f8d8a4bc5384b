"""Exception hierarchy shared by all modules."""


class OverqError(Exception):
    pass


class IncompatibleOffset(OverqError):
    pass


class NonUnitConstantTerm(OverqError):
    pass


class OffsetNotIntegral(OverqError):
    pass


class ModulusPresent(OverqError):
    pass


class CuspNotOnLevel(OverqError):
    pass


class HypothesisViolated(OverqError):
    pass


class NotInSpan(OverqError):
    def __init__(self, message, exponent=None):
        super().__init__(message)
        self.exponent = exponent


class NonIntegralCoefficient(OverqError):
    pass


class IdentityViolated(OverqError):
    def __init__(self, identity, exponent):
        super().__init__(f"{identity}: first nonzero residual at q^{exponent}")
        self.identity = identity
        self.exponent = exponent


class UnknownName(OverqError):
    pass


class SupportViolation(OverqError):
    pass


class CrossCheckFailed(OverqError):
    pass


class BoundViolated(OverqError):
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class CounterexampleFound(OverqError):
    def __init__(self, report):
        super().__init__(f"counterexample for {report.claim}: {report.counterexample}")
        self.report = report


class BudgetExceeded(OverqError):
    pass


class EvenModulus(OverqError):
    pass
