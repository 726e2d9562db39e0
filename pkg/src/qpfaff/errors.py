"""Exception types shared across the package."""


class QPfaffError(Exception):
    """Base class for all errors raised by qpfaff."""


class DomainError(QPfaffError, ValueError):
    """An argument lies outside the domain of the operation."""


class ZeroBase(QPfaffError, ZeroDivisionError):
    """Evaluation at q = 0 of a scalar with negative powers of q."""


class ParseError(QPfaffError, ValueError):
    pass


class MissingRelation(QPfaffError):
    """An out-of-order adjacent pair has no registered rewrite rule."""

    def __init__(self, first, second):
        self.pair = (first, second)
        super().__init__(f"no relation registered for the pair ({first}, {second})")


class NotOrientable(QPfaffError):
    """A relation cannot be turned into a rewrite rule."""

    def __init__(self, relation, reason=""):
        self.relation = relation
        msg = f"relation not orientable: {relation}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DegenerateInput(QPfaffError):
    pass
