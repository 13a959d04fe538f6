"""Exception hierarchy shared by all modules.

Each exception carries a machine-readable ``code`` (the class name) and a
``category`` used by the command-line front end to pick an exit status.
"""


class TropArithError(Exception):
    category = "validation"

    @property
    def code(self):
        return type(self).__name__


# -- input / structural validation ---------------------------------------

class NotSymmetric(TropArithError):
    category = "schema"


class NotPositiveSemidefinite(TropArithError):
    category = "schema"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DimensionMismatch(TropArithError):
    category = "schema"


class SchemaViolation(TropArithError):
    category = "schema"


class UnknownCommand(TropArithError):
    category = "usage"


# -- operation preconditions ---------------------------------------------

class RadicalViolation(TropArithError):
    pass


class UnboundedBelow(TropArithError):
    pass


class NotSurjective(TropArithError):
    pass


class ParityMismatch(TropArithError):
    pass


class NotDefinite(TropArithError):
    pass


class RankMismatch(TropArithError):
    pass


class InvalidWorksheet(TropArithError):
    pass


class EmptyWorksheet(TropArithError):
    pass


class OnThetaDivisor(TropArithError):
    pass


class NotPositiveDefinite(TropArithError):
    pass


# -- numerical failures ---------------------------------------------------

class PrecisionUnreachable(TropArithError):
    category = "numerical"


class EnumerationLimit(TropArithError):
    category = "numerical"
