"""Exception hierarchy shared by every module."""


class VerbaError(Exception):
    pass


# groups
class InvalidOrder(VerbaError, ValueError):
    pass


class NonAssociative(VerbaError, ValueError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"associativity fails at {triple}")


class NoIdentity(VerbaError, ValueError):
    pass


class NoInverse(VerbaError, ValueError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no inverse")


# words
class UnknownFactor(VerbaError, ValueError):
    pass


class LetterOutOfRange(VerbaError, ValueError):
    pass


class SignatureMismatch(VerbaError, ValueError):
    pass


class ParseError(VerbaError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotHyperbolic(VerbaError, ValueError):
    pass


# periodic
class NotSimple(VerbaError, ValueError):
    pass


class PreconditionViolated(VerbaError, ValueError):
    pass


class PreconditionTooShort(PreconditionViolated):
    pass


class NoCommonStructure(VerbaError, ValueError):
    pass


class NotApplicable(VerbaError, ValueError):
    pass


# tree
class BallTooLarge(VerbaError, RuntimeError):
    pass


class WindowTooSmall(VerbaError, RuntimeError):
    pass


# slp
class BudgetExceeded(VerbaError, RuntimeError):
    def __init__(self, bound, budget, node=None):
        self.bound = bound
        self.budget = budget
        self.node = node
        super().__init__(f"length {bound} exceeds syllable budget {budget}")


class UnresolvedConstant(VerbaError, RuntimeError):
    """An expression still carries a symbolic exponent."""


# testwords
class CommutingPair(VerbaError, ValueError):
    pass


class SearchExhausted(VerbaError, RuntimeError):
    pass


class StructureMismatch(VerbaError, RuntimeError):
    pass


class BadArity(VerbaError, ValueError):
    pass


# cli / verify
class UnknownSuite(VerbaError, ValueError):
    pass
