"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 means a mathematical property failed, 2 means the input was unusable.
"""


class FlatticeError(Exception):
    exit_code = 1

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(FlatticeError):
    exit_code = 2


class MixedAmbient(InputError):
    pass


class SizeLimit(InputError):
    pass


class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass


class DimensionError(InputError):
    pass


class NotInCarrier(InputError):
    pass


class NotClosed(FlatticeError):
    pass


class Inconsistent(FlatticeError):
    pass


class NotPositive(FlatticeError):
    pass


class NotFAlgebra(FlatticeError):
    pass


class NegativeWeight(FlatticeError):
    pass


class NotSemiPrime(FlatticeError):
    pass


class CertificatesMissing(FlatticeError):
    pass


class NotIntoCodomain(FlatticeError):
    pass


class PreconditionFailed(FlatticeError):
    pass


class ExtensionInconsistent(FlatticeError):
    pass
