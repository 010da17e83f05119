"""Exception types raised across the solver."""


class MMCutError(Exception):
    """Base class for all solver errors."""


class InputError(MMCutError):
    """The caller handed over an input the solver cannot accept."""


class EmptyGraph(InputError):
    pass


class DisconnectedInput(InputError):
    pass


class NonpositiveWeight(InputError):
    pass


class InvalidEdge(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleShape(InputError):
    pass


class TooLarge(InputError):
    pass


class UnsupportedScale(MMCutError):
    pass


class EigenFailure(MMCutError):
    pass


class Degenerate(MMCutError):
    """Eigenvalues involved in the gradient are not simple."""


class NoCandidates(MMCutError):
    pass


class InfeasibleCut(MMCutError):
    pass


class RepairFailed(MMCutError):
    pass


class MontageFailure(MMCutError):
    pass
