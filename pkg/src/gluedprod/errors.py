"""Exception types shared across the package."""


class GluedError(Exception):
    """Base class for all library errors."""


class GroupSpecError(GluedError, ValueError):
    """Malformed or inconsistent group specification."""


class MembershipError(GluedError, ValueError):
    """A letter or residual that is not an element of the product group."""


class RegimeError(GluedError, ValueError):
    """Operation undefined for this combination of finite/infinite factors."""


class FiberMismatchError(GluedError, ValueError):
    """Transport requested between vertices in distinct s-fibers."""


class BudgetError(GluedError, RuntimeError):
    """An enumeration or check exceeded its configured budget."""


class WordParseError(GluedError, ValueError):
    """Unparsable element, word, or permutation literal."""
