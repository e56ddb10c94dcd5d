"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class FactorError(Exception):
    exit_code = 1


class InvalidInput(FactorError, ValueError):
    exit_code = 4


class PreconditionUnmet(FactorError):
    """A hypothesis of the requested construction does not hold.

    ``witness`` optionally carries the certificate (a cut, partition, vertex...).
    """

    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ContractViolation(FactorError):
    """A step whose success is guaranteed by a theorem failed: an audit finding."""

    exit_code = 3

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapacityError(FactorError):
    exit_code = 5
