"""Exception hierarchy shared by all padiclab modules.

Every error carries a stable ``code`` string so the CLI can emit a
machine-parsable reason. ``DomainError`` maps to exit status 1,
``ResourceLimitError`` to exit status 3.
"""


class PadiclabError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class DomainError(PadiclabError):
    """An operation was called with arguments outside its domain."""

    code = "domain_error"


class ResourceLimitError(PadiclabError):
    """Input exceeds the documented desk-scale resource bounds."""

    code = "resource_limit"


class NotPrimeError(DomainError):
    code = "not_prime"


class MixedPrimesError(DomainError):
    code = "mixed_primes"


class ZeroInversionError(DomainError):
    code = "zero_inversion"


class ExpansionFormatError(DomainError):
    """Negative-valuation numbers have no plain digit expansion."""

    code = "unsupported_expansion"


class ExpansionParseError(DomainError):
    code = "expansion_parse_error"


class NotARootError(DomainError):
    code = "not_a_root"


class SingularRootError(DomainError):
    """The simple-root lifting scheme does not apply (derivative vanishes mod p)."""

    code = "singular_root"


class NonEncodableError(DomainError):
    """The rational has no r-digit residue code (p divides its denominator)."""

    code = "non_encodable"


class DecodeFailureError(DomainError):
    """No rational inside the Farey box reproduces the residue."""

    code = "decode_failure"


class AccuracyError(PadiclabError):
    """Quadrature failed to reach the requested tolerance."""

    code = "accuracy_error"

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class RangeError(DomainError):
    """Evaluation would leave the supported numeric range."""

    code = "range_error"
