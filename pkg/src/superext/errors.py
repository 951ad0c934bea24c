"""Exception types shared across the engine."""


class SuperextError(Exception):
    """Base class for all engine errors."""


class ShapeError(SuperextError):
    """Dimensions or bases of the operands do not match."""


class MembershipError(SuperextError):
    """An input lies outside the set the operation requires."""


class NotAnIdealError(MembershipError):
    """The selected basis subset does not span an abelian ideal."""


class ParseError(SuperextError):
    """A description file is malformed."""
