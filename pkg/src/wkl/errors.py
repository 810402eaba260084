"""Exception hierarchy shared by the library and the CLI."""


class WKLError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WKLError, ValueError):
    """Malformed element word, descriptor, flag value or polynomial text."""


class MathError(WKLError):
    """A mathematical precondition was violated."""


class UnsupportedModel(MathError):
    pass


class WeightInconsistent(MathError):
    pass


class NegativeWeight(MathError):
    pass


class NotInDJ(MathError):
    pass


class NotComparable(MathError):
    pass


class ZeroWeight(MathError):
    pass


class WAUnreachable(MathError):
    """A weak ascent showed up although the ideal is all of D_J."""


class IdentityViolation(MathError):
    """A computed polynomial failed one of its defining identities."""


class VerifyFailed(WKLError):
    """At least one identity suite found a counterexample."""
