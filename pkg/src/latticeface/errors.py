"""Exception hierarchy shared by every module in the package."""


class LatticeFaceError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(LatticeFaceError, ValueError):
    pass


class EmptyInputError(LatticeFaceError, ValueError):
    pass


class NotAHyperplaneError(LatticeFaceError, ValueError):
    pass


class SingularMatrixError(LatticeFaceError, ValueError):
    pass


class PreconditionError(LatticeFaceError, ValueError):
    pass


class DegeneratePolytopeError(LatticeFaceError, ValueError):
    """The polytope is not full-dimensional in its ambient space."""


class VerticalFacetError(LatticeFaceError, ValueError):
    """Some facet normal has zero last coordinate, so boundary fibers may be segments."""


class InvalidTriangulationError(LatticeFaceError, ValueError):
    pass


class FormulaInapplicableError(LatticeFaceError):
    """No lattice-face triangulation is known, so the projection formula is not asserted."""


class OracleInapplicableError(LatticeFaceError):
    pass


class ParseError(LatticeFaceError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
