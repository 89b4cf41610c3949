"""Exception hierarchy shared by every module in the package.

Three families matter to the command line: bad input (exit code 2),
unmet theorem hypotheses (exit code 3), and size guards that refuse a
computation rather than return an inexact answer (exit code 4).
"""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToolkitError):
    """Malformed input or an argument outside an operation's contract."""


class GuardError(ToolkitError):
    """Refused: the exact computation would exceed a built-in size bound."""


# -- arithmetic ---------------------------------------------------------------

class DivisionByZero(InputError):
    pass


class NonExactDivision(InputError):
    """Polynomial division left a nonzero remainder where exactness was required."""


class ZeroConstantTerm(InputError):
    """The operation needs a nonzero (usually unit) constant term."""


class BoundaryRoot(InputError):
    """A Sturm count was requested on an interval whose endpoint is a root."""


class NotPrime(InputError):
    pass


class OrderTooLarge(GuardError):
    """Cyclotomic order beyond the exact detection bound (phi(d) > 64)."""


# -- slope profiles -----------------------------------------------------------

class WrongDegree(InputError):
    pass


# -- Weil pipeline ------------------------------------------------------------

class BadConstantTerm(InputError):
    """A Frobenius characteristic polynomial must have constant term 1."""


class NotSelfInversive(InputError):
    """Coefficients are not palindromic up to sign, so the certificate is undefined."""


class NotSquarefree(InputError):
    pass


class RootAtUnity(InputError):
    """The trans part must not vanish at t = 1 or t = -1."""


class BoundTooLarge(GuardError):
    """Independence search bound beyond the iterated-composed-product caps."""


# -- invariants / models ------------------------------------------------------

class HypothesesNotMet(ToolkitError):
    """An eigenvalue structure was requested from a report that fails the gate."""

    def __init__(self, failed: list[str], message: str | None = None):
        self.failed = list(failed)
        super().__init__(message or "hypotheses not met: " + ", ".join(self.failed))


class TooLarge(GuardError):
    """Brute-force enumeration refused: alphabet**n exceeds the 10**7 cap."""


class JTooSmall(InputError):
    """Generation check needs at least 2k graph classes (J >= 2k)."""


class ModelTooLarge(GuardError):
    """Diagonal-model check refused: r <= 4, a <= 3, k <= 3 are the exact-size caps."""


class OutOfRange(InputError):
    pass


# -- CLI ---------------------------------------------------------------------

class SchemaError(InputError):
    """Input JSON violates the documented schema; carries a JSON-pointer path."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{message} (at {pointer or '/'})")


class NoFixtureFound(GuardError):
    """The fixture search box was exhausted without a polynomial passing all gates."""
