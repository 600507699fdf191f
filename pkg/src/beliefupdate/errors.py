"""Exception hierarchy shared by every calculus in the package."""

from __future__ import annotations


class UpdateError(Exception):
    """Base class for all errors raised by this package."""


# --- frame / validation -----------------------------------------------------


class ValidationError(UpdateError, ValueError):
    """A value violates a type invariant.

    ``invariant`` names the rule that failed (e.g. ``"mass normalization"``),
    ``field`` optionally names the offending field.
    """

    def __init__(self, invariant: str, message: str = "", field: str | None = None):
        self.invariant = invariant
        self.field = field
        text = invariant if not message else f"{invariant}: {message}"
        if field:
            text = f"{field}: {text}"
        super().__init__(text)


class UnknownElement(ValidationError):
    def __init__(self, name: str):
        self.name = name
        super().__init__("unknown element", f"{name!r} is not in the frame")


class FrameMismatch(UpdateError, ValueError):
    """Operands belong to different frames."""


class FrameTooLarge(UpdateError, ValueError):
    """The frame exceeds the exhaustive-enumeration cap."""


class EmptySet(UpdateError, ValueError):
    """A non-empty set was required."""


# --- rule preconditions -----------------------------------------------------


class ConditioningUndefined(UpdateError, ArithmeticError):
    """A conditioning rule's precondition fails.

    ``reason`` says which precondition, ``event`` optionally carries the
    offending subset or partition cell.
    """

    def __init__(self, reason: str, event=None):
        self.reason = reason
        self.event = event
        msg = reason if event is None else f"{reason} (event {event})"
        super().__init__(msg)


class ConditioningOnNull(ConditioningUndefined):
    """Bayes/Jeffrey conditioning on an event of (near) zero probability."""


class TotalConflict(UpdateError, ArithmeticError):
    """The two inputs share no commonly possible state."""


class NoFeasibleSelection(UpdateError, ArithmeticError):
    """No extreme point of the credal set gives the conditioning event positive probability."""


class WeightNormalization(ValidationError):
    def __init__(self, message: str = ""):
        super().__init__("weight normalization", message)


class DegenerateComplement(UpdateError, ValueError):
    """(A, n)-conditionalization needs a non-empty complement of A."""


class NotOnRankGrid(UpdateError, ValueError):
    """A possibility value is not e**-k for a natural k."""

    def __init__(self, element: str, value: float):
        self.element = element
        self.value = value
        super().__init__(f"possibility of {element!r} ({value!r}) is not on the e**-k grid")


class ZeroPossibility(UpdateError, ValueError):
    """A zero possibility has no finite rank."""


# --- engine / io -------------------------------------------------------------


class UnknownRule(UpdateError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown rule"


class GeneratorConstraintUnsatisfiable(UpdateError, RuntimeError):
    """Rejection sampling exhausted its budget."""


class KindMismatch(UpdateError, TypeError):
    """An operation was applied to a state of the wrong kind."""


class ParseError(UpdateError, ValueError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class UnnormalizedResult(UserWarning):
    """An update succeeded but returned a subnormal possibility distribution."""
