"""Exception hierarchy. Every domain failure derives from NovikovError."""


class NovikovError(Exception):
    """Base class for all domain errors raised by the package."""

    kind = "domain-error"

    def to_json(self):
        return {"type": self.kind, "message": str(self)}


class MalformedInput(NovikovError, ValueError):
    kind = "malformed-input"


class EmptyInput(NovikovError, ValueError):
    kind = "empty-input"


class MissingBinding(NovikovError, KeyError):
    kind = "missing-binding"

    def __str__(self):
        return Exception.__str__(self)


class ParseError(MalformedInput):
    kind = "syntax-error"

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        out["position"] = self.position
        return out


class InvalidTableau(NovikovError, ValueError):
    kind = "invalid-tableau"


class NotATableau(NovikovError, ValueError):
    kind = "not-a-tableau"


class InconsistentSystem(NovikovError, ArithmeticError):
    kind = "inconsistent-system"


class SearchExhausted(NovikovError):
    kind = "not-found"

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}

    def to_json(self):
        out = super().to_json()
        out["diagnostics"] = self.diagnostics
        return out


class FieldObstruction(SearchExhausted):
    kind = "field-obstruction"


class HypothesisViolation(NovikovError, ValueError):
    kind = "hypothesis-violation"


class WitnessFailure(NovikovError):
    """A witness stage failed; ``stage`` names which one."""

    kind = "witness-failure"

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")

    def to_json(self):
        out = super().to_json()
        out["stage"] = self.stage
        out["cause"] = self.cause.to_json() if isinstance(self.cause, NovikovError) else str(self.cause)
        return out
