"""Exception hierarchy.

Every error carries a short ``kind`` string; the CLI reports it verbatim in
its JSON error payload.
"""


class LegendrianError(Exception):
    kind = "Error"

    def to_json(self):
        return {"error": self.kind, "message": str(self)}


class FrontSyntaxError(LegendrianError):
    kind = "SyntaxError"


class ShapeError(LegendrianError):
    kind = "ShapeError"


class MarkError(LegendrianError):
    kind = "MarkError"


class InconsistentPotential(LegendrianError):
    kind = "InconsistentPotential"


class NotPrime(LegendrianError):
    kind = "NotPrime"


class DegreeZero(LegendrianError):
    kind = "DegreeZero"


class DivByZero(LegendrianError, ZeroDivisionError):
    kind = "DivByZero"


class ParityError(LegendrianError):
    kind = "ParityError"


class NegativeExponentError(LegendrianError):
    kind = "NegativeExponentError"


class GradingError(LegendrianError):
    kind = "GradingError"


class ScaleError(LegendrianError):
    kind = "ScaleError"


class MethodUnavailable(LegendrianError):
    kind = "MethodUnavailable"


class ObstructionAt(LegendrianError):
    """An MCS condition fails at the given slot."""

    kind = "ObstructionAt"

    def __init__(self, slot, message=""):
        super().__init__(f"slot {slot}: {message}" if message else f"slot {slot}")
        self.slot = slot


class NotAForm(LegendrianError):
    kind = "NotAForm"


class NotSRForm(LegendrianError):
    kind = "NotSRForm"


class NotAugmentation(LegendrianError):
    kind = "NotAugmentation"


class NotASolution(LegendrianError):
    kind = "NotASolution"


class LoopEdge(LegendrianError):
    kind = "LoopEdge"


class UsageError(LegendrianError):
    kind = "UsageError"
