"""Exception hierarchy.

Every failure the library can signal derives from :class:`GramclassError`.
:class:`ValidationError` covers bad input (the CLI maps it to exit status 2);
:class:`InternalError` flags a broken internal invariant (exit status 70).
"""

from __future__ import annotations


class GramclassError(Exception):
    """Base class for all library errors."""


class ValidationError(GramclassError):
    """Input does not satisfy a documented precondition."""


class InternalError(GramclassError):
    """An invariant that should always hold was violated."""


# exactmat
class NotSquare(ValidationError):
    pass


class NotSymmetric(ValidationError):
    pass


class NotSkewSymmetric(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NoSolution(ValidationError):
    pass


class NonIntegerSolution(ValidationError):
    pass


class Underdetermined(ValidationError):
    pass


class NotInvertible(ValidationError):
    pass


# quiver
class HasLoop(ValidationError):
    def __init__(self, arrow: int):
        super().__init__(f"arrow {arrow} is a loop")
        self.arrow = arrow


class Disconnected(ValidationError):
    def __init__(self, components: list[list[int]]):
        super().__init__(f"quiver is disconnected, components {components}")
        self.components = components


class InfeasibleShape(ValidationError):
    pass


# unitform
class NotConnected(ValidationError):
    pass


class NotNonNegative(ValidationError):
    pass


class NotTypeA(ValidationError):
    pass


# standard
class InvalidShape(ValidationError):
    pass


# congruence
class NonIntegerStar(ValidationError):
    pass


class LaplacianMismatch(ValidationError):
    pass


class CycleTypeMismatch(ValidationError):
    pass


class NotPseudoEndo(ValidationError):
    pass


class NotPure(ValidationError):
    pass


class NoL(ValidationError):
    pass


class NotPureNormalForm(ValidationError):
    pass


class WNotInvertibleNormal(ValidationError):
    pass


class NotWeaklyCongruent(ValidationError):
    pass


class DifferentCoxeterPolynomial(ValidationError):
    pass


# file formats
class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class InvariantError(ValidationError):
    def __init__(self, invariant: str, detail: str = ""):
        super().__init__(f"violated invariant: {invariant}" + (f" ({detail})" if detail else ""))
        self.invariant = invariant
