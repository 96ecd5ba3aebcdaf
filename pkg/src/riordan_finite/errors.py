"""Exception hierarchy shared by every module."""


class RiordanError(Exception):
    """Base class for all library errors."""


class ContextMismatch(RiordanError, ValueError):
    """Operands live in different fields or at different precisions."""


class DivisionByZero(RiordanError, ZeroDivisionError):
    pass


class ZeroScalar(RiordanError, ValueError):
    pass


class NotAUnit(RiordanError, ValueError):
    """Series with zero constant term where a multiplicative unit is needed."""


class InnerNotPositiveOrder(RiordanError, ValueError):
    """Composition inner argument has a nonzero constant term."""


class NotInvertible(RiordanError, ValueError):
    """Series is not in the compositional group (F0 != 0 or F1 == 0)."""


class NotComposable(NotInvertible):
    pass


class NotUnitNormalized(RiordanError, ValueError):
    """Constant term is not 1."""


class NotPositiveOrder(RiordanError, ValueError):
    pass


class RowsExceedPrecision(RiordanError, ValueError):
    pass


class NotFiniteOrder(RiordanError, ValueError):
    pass


class BadResidue(RiordanError, ValueError):
    pass


class NotARootOfUnity(RiordanError, ValueError):
    pass


class SpecPeriodMismatch(RiordanError, ValueError):
    pass


class ThetaLeadingZero(RiordanError, ValueError):
    pass


class ArityMismatch(RiordanError, ValueError):
    pass


class SubstitutionNotPositiveOrder(RiordanError, ValueError):
    pass


class NotBiInvertible(RiordanError, ValueError):
    pass


class BadLeadingScalar(RiordanError, ValueError):
    pass


class ExprError(RiordanError):
    """Problem with a textual series expression; ``pos`` is the byte offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} (at offset {pos})"
        super().__init__(message)


class ParseError(ExprError):
    pass


class DomainError(ExprError, ValueError):
    pass
