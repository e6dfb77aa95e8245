"""Exception types shared across the package."""


class KhmError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(KhmError):
    """Operands live over different k or have incompatible sizes."""


class NotHalvable(KhmError):
    """Coefficient-wise division by 2 hit an odd coefficient."""


class NotBinary(KhmError):
    """Entry or coefficient outside {0, 1}."""


class NotSignMatrix(KhmError):
    """Matrix has an entry outside {-1, +1}."""


class NotAnAutomorphism(KhmError):
    """Parameters do not define a dihedral-group automorphism."""


class UnsupportedParameter(KhmError):
    """Parameter outside the supported range (e.g. even k)."""


class NotKimuraForm(KhmError):
    """Matrix does not carry the bordered four-block layout."""


class NotDihedralType(KhmError):
    """A block is not the sign image of a regular-representation matrix."""


class NotMonomial(KhmError):
    """Computed matrix is not a signed permutation matrix."""


class NotTransitive(KhmError):
    """Block-system query on an intransitive permutation group."""


class CapExceeded(KhmError):
    """Group closure grew past the element cap."""


class NodeCapExceeded(KhmError):
    """Search visited more nodes than allowed."""


class TimeBudgetExceeded(KhmError):
    """Search ran out of wall-clock budget.

    Carries whatever partial result was available in ``partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class Contradiction(KhmError):
    """Refinement proved the current partial assignment infeasible."""


class HypothesisViolated(KhmError):
    """A construction's structural hypothesis failed; names the culprit."""


class NotAdmissible(KhmError):
    """Prime fails the admissibility conditions of the field construction."""


class NonRealCharacterValue(KhmError):
    """Character value is not +-1 where a sign was required."""


class ZeroValue(KhmError):
    """Character value is zero where a sign was required."""


class ConstructionFailed(KhmError):
    """Finite-field construction produced no valid block elements."""


class ParseError(KhmError):
    """Malformed textual input; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
