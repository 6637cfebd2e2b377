"""Exception hierarchy shared by every module.

Input problems (bad files, points outside a hull, inconsistent parameters)
derive from :class:`InputError`. Failures that can only mean a bug in this
package, because the mathematics says they cannot happen, derive from
:class:`DefectError`. The CLI maps the first family to exit code 2 and the
second to exit code 1.
"""


class SumcritError(Exception):
    """Base class for all package errors."""


class InputError(SumcritError, ValueError):
    """The caller supplied data that violates a precondition."""


class DefectError(SumcritError, AssertionError):
    """An internal cross-check disagreed with a proven identity."""


class EmptyOperand(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class OutsideHull(InputError):
    pass


class DegenerateSimplex(InputError):
    pass


class InvalidPlacingOrder(InputError):
    pass


class NotAShelling(InputError):
    pass


class RankDeficient(InputError):
    pass


class ZeroInput(InputError):
    pass


class BadDirection(InputError):
    pass


class NotInterior(InputError):
    pass


class BadParams(InputError):
    pass


class EquivalenceViolation(DefectError):
    pass


class ClassifierDefect(DefectError):
    pass


class TheoremViolation(DefectError):
    pass
