"""Exception hierarchy shared by all valhilb modules."""

from __future__ import annotations


class ValhilbError(Exception):
    """Base class for all errors raised by this package."""


class FieldParseError(ValhilbError):
    """A field literal failed to parse.

    Carries the byte offset of the failure and a description of what was
    expected there.
    """

    def __init__(self, offset: int, expected: str, text: str = ""):
        self.offset = offset
        self.expected = expected
        self.text = text
        super().__init__(f"parse error at offset {offset}: expected {expected}")


class DivisionByZero(ValhilbError):
    pass


class PrecisionExhausted(ValhilbError):
    """A truncated-series computation could not determine a leading term.

    Retryable: re-run the computation with a larger precision budget.
    ``budget`` records the budget under which the failure happened.
    """

    def __init__(self, budget, message: str = "leading term undetermined"):
        self.budget = budget
        super().__init__(f"{message} (budget tau={budget})")


class NegativeInput(ValhilbError):
    pass


class NotRepresentable(ValhilbError):
    """The exact result lies outside the coefficient domain of the backend."""


class MixedBackends(ValhilbError):
    """Two operands belong to different field backends."""


# projective / convex geometry

class NotCollinear(ValhilbError):
    pass


class DegenerateQuadruple(ValhilbError):
    pass


class DegenerateConfiguration(ValhilbError):
    pass


class IdenticalPoints(ValhilbError):
    pass


class PointAtInfinity(ValhilbError):
    pass


class LineAtInfinity(ValhilbError):
    pass


class DegenerateInput(ValhilbError):
    pass


class DimensionMismatch(ValhilbError):
    pass


# Hilbert geometry

class PointNotInterior(ValhilbError):
    pass


class NotInDisk(ValhilbError):
    pass


class NotInOpenSimplex(ValhilbError):
    pass


# sandwich construction

class DegenerateFlag(ValhilbError):
    pass


class SearchFailed(ValhilbError):
    """A certified search (shear / scaling) failed; carries the certificate."""

    def __init__(self, certificate: str):
        self.certificate = certificate
        super().__init__(f"search failed: {certificate}")


# flag complex metric

class Unstabilized(ValhilbError):
    """Gallery optimum changed when the bound was raised; result unsound."""


class LiftOutsideDomain(ValhilbError):
    pass


# real convergence harness

class OverflowRisk(ValhilbError):
    pass


class PointEscaped(ValhilbError):
    pass


# exact LP

class LPInfeasible(ValhilbError):
    pass


class LPUnbounded(ValhilbError):
    pass
