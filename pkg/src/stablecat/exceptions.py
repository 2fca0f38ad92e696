"""Exception hierarchy shared by the library and the command line."""


class StableCatError(Exception):
    """Base class for all library errors."""


class InvalidRelation(StableCatError):
    pass


class InfiniteDimensional(StableCatError):
    pass


class ValidationError(StableCatError):
    """An entity violates a structural invariant (shape, relation, intertwining)."""


class AlgebraMismatch(StableCatError):
    pass


class TargetMismatch(StableCatError):
    pass


class SourceMismatch(StableCatError):
    pass


class ShapeMismatch(StableCatError):
    pass


class BudgetExceeded(StableCatError):
    pass


class NotStableEpi(StableCatError):
    pass


class NotStrongMono(StableCatError):
    pass


class NotProjectiveGenerator(StableCatError):
    pass


class NotMono(StableCatError):
    pass


class SourceNotInT(StableCatError):
    pass


class NotApplicable(StableCatError):
    pass


class UnknownScenario(StableCatError):
    pass


class ParseError(StableCatError):
    pass


class UnknownReference(StableCatError):
    pass
