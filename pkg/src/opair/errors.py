class OpairError(Exception):
    """Base class for all errors raised by opair."""


class DimensionError(OpairError, ValueError):
    pass


class PreconditionError(OpairError, ValueError):
    pass


class PropertyViolation(OpairError):
    """An identity that must hold for every matrix pair was found to fail.

    Never expected in practice; raising it means either an arithmetic bug
    or a counterexample to a claimed structural property.
    """
