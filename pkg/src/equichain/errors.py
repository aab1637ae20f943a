"""Exception hierarchy.

Every error raised on purpose by the library derives from
:class:`EquichainError`; the CLI maps these to exit status 2 (input
error) except where a command documents otherwise.
"""


class EquichainError(Exception):
    pass


class CompositeModulus(EquichainError, ValueError):
    """A coefficient modulus was neither 0 nor a prime."""


class NotASubgroup(EquichainError, ValueError):
    pass


class IllDefined(EquichainError, ValueError):
    """A matrix does not carry domain relations into codomain relations."""


class InvalidGroup(EquichainError, ValueError):
    pass


class InvalidComplex(EquichainError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics) or "invalid complex")


class NotAdmissible(InvalidComplex):
    pass


class SignedOrbit(EquichainError, ValueError):
    pass


class NotPrimeOrder(EquichainError, ValueError):
    pass


class NotAnAutomorphism(EquichainError, ValueError):
    pass


class NotCoprime(EquichainError, ValueError):
    pass


class NotFree(EquichainError, ValueError):
    pass


class InapplicableHypothesis(EquichainError):
    """The input does not satisfy the hypothesis of the theorem being checked."""


class UnknownName(EquichainError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class BadParameter(EquichainError, ValueError):
    pass


class DocumentError(EquichainError, ValueError):
    """Malformed JSON input; the message names the offending field."""
