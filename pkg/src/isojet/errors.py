"""Exception hierarchy shared by all isojet modules.

Every error carries a stable kebab-case ``code`` used by the service layer
and the CLI exit-code mapping.  Definitive negative *results* (an infeasible
linear system, an exhausted search, a failed equivalence check) are not
exceptions; they are returned as values.
"""


class IsojetError(Exception):
    code = "error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def payload(self):
        body = {"code": self.code, "message": self.message}
        body.update(self.details)
        return body


# -- field / scalar ---------------------------------------------------------

class DivisionByZero(IsojetError):
    code = "division-by-zero"


class FieldMismatch(IsojetError):
    code = "field-mismatch"


class NotSupported(IsojetError):
    code = "not-supported"


class InvalidField(IsojetError):
    code = "invalid-field"


# -- linear algebra ---------------------------------------------------------

class DimensionMismatch(IsojetError):
    code = "dimension-mismatch"


class SingularMatrix(IsojetError):
    code = "singular-matrix"


# -- truncated rings --------------------------------------------------------

class SpecMismatch(IsojetError):
    code = "spec-mismatch"


class ConstantTermNotAllowed(IsojetError):
    code = "constant-term-not-allowed"


class NotAUnit(IsojetError):
    code = "not-a-unit"


# -- contact group ----------------------------------------------------------

class SingularJacobian(IsojetError):
    code = "singular-jacobian"


class PreconditionFailed(IsojetError):
    code = "precondition-failed"


class PointNotOnVariety(IsojetError):
    code = "point-not-on-variety"


# -- tangent cones / invariants ---------------------------------------------

class ZeroInput(IsojetError):
    code = "zero-input"


class RepeatedRoots(IsojetError):
    code = "repeated-roots"


class RootsNotInField(IsojetError):
    code = "roots-not-in-field"


# -- derivations ------------------------------------------------------------

class NotRegular(IsojetError):
    code = "not-regular"


class CharPNotSupported(IsojetError):
    code = "char-p-not-supported"


class StraightenFailed(IsojetError):
    code = "straighten-failed"


class WitnessInvalid(IsojetError):
    code = "witness-invalid"


class DerivationFeasible(IsojetError):
    code = "derivation-feasible"


# -- searches / scans -------------------------------------------------------

class FieldNotFinite(IsojetError):
    code = "field-not-finite"


class DomainTooLarge(IsojetError):
    code = "domain-too-large"


class SearchSpaceTooLarge(IsojetError):
    code = "search-space-too-large"


class UnknownDemo(IsojetError):
    code = "unknown-demo"


# -- parsing ----------------------------------------------------------------

class ParseError(IsojetError):
    code = "syntax-error"

    def __init__(self, message, position=None):
        super().__init__(message, position=position)
        self.position = position


class UnknownVariable(ParseError):
    code = "unknown-variable"


class DegreeExceedsBeta(IsojetError):
    code = "degree-exceeds-beta"


#: error codes that count as usage / parse problems (CLI exit code 2)
USAGE_CODES = {
    "syntax-error", "unknown-variable", "degree-exceeds-beta", "invalid-field",
    "field-mismatch", "spec-mismatch", "dimension-mismatch", "division-by-zero",
    "not-supported", "constant-term-not-allowed", "not-a-unit",
    "singular-jacobian", "singular-matrix", "precondition-failed",
    "point-not-on-variety", "zero-input", "not-regular", "char-p-not-supported",
    "field-not-finite", "domain-too-large", "search-space-too-large",
    "unknown-demo", "error", "straighten-failed",
}

#: error codes that are definitive mathematical negatives (CLI exit code 1)
NEGATIVE_CODES = {"repeated-roots", "roots-not-in-field", "witness-invalid",
                  "derivation-feasible"}
