"""Exception hierarchy shared by every module."""


class SymfieldsError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(SymfieldsError, TypeError):
    """Operands live over different coefficient fields or registries."""


class DivisionByZeroError(SymfieldsError, ZeroDivisionError):
    pass


class PoleError(DivisionByZeroError):
    """A denominator vanished at an evaluation point."""


class IncompleteAssignmentError(SymfieldsError, KeyError):
    pass


class ParseError(SymfieldsError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(SymfieldsError, KeyError):
    pass


class DegenerateArgumentsError(SymfieldsError, ValueError):
    """Repeated variables where pairwise distinct ones are required."""


class NotABijectionError(SymfieldsError, ValueError):
    pass


class NotClosedError(SymfieldsError, ValueError):
    """A finite list of maps, or a Lie basis, is not closed."""


class DependentBasisError(SymfieldsError, ValueError):
    pass


class ClassificationError(SymfieldsError, ArithmeticError):
    pass


class SingularCurveError(SymfieldsError, ArithmeticError):
    pass


class NonInvertibleError(SymfieldsError, ArithmeticError):
    pass


class PreconditionError(SymfieldsError, ValueError):
    pass


class InternalConsistencyError(SymfieldsError, AssertionError):
    """A closed-form law that must hold was violated."""
