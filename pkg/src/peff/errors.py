"""Exception hierarchy shared by every layer."""


class PeffError(Exception):
    """Base class for all library errors."""


class UnknownBuiltin(PeffError):
    pass


class OpenTerm(PeffError):
    pass


class IndexOutOfRange(PeffError):
    pass


class TermSyntaxError(PeffError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position


class DomainMismatch(PeffError):
    pass


class PreconditionFailed(PeffError):
    pass


class IndeterminateVerdict(PeffError):
    """Raised when a boolean answer is requested but evaluation ran out of fuel."""


class NotASetCode(PeffError):
    def __init__(self, point, code=None):
        super().__init__(f"not a set code at base point {point}" + ("" if code is None else f": {code}"))
        self.point = point
        self.code = code


class PresentationInvalid(PeffError):
    pass


class NotSmall(PeffError):
    pass


class TypeMismatch(PeffError):
    def __init__(self, message, variable=None, expected=None):
        super().__init__(message)
        self.variable = variable
        self.expected = expected


class UnknownFunctionSymbol(PeffError):
    pass


class NotFoundWithinBudget(PeffError):
    pass


class ExtractionFailed(PeffError):
    pass


class InvalidEquivalence(PeffError):
    def __init__(self, law, detail=""):
        super().__init__(f"{law} fails" + (f": {detail}" if detail else ""))
        self.law = law


class NotSaturated(PeffError):
    def __init__(self, counterexample=None):
        super().__init__(f"not saturated, counterexample {counterexample}")
        self.counterexample = counterexample


class InvalidAction(PeffError):
    def __init__(self, law, detail=""):
        super().__init__(f"action law {law} fails" + (f": {detail}" if detail else ""))
        self.law = law


class SchemaError(PeffError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidFamily(PeffError):
    def __init__(self, law, detail=""):
        super().__init__(f"family law {law} fails" + (f": {detail}" if detail else ""))
        self.law = law


class UnknownSuite(PeffError):
    pass
