"""Exception hierarchy.

Input problems map to CLI exit code 1, numerical failures to exit code 2.
Every exception carries a ``context`` dict that ends up in the structured
error object written to stderr.
"""


class KirchhoffError(Exception):
    exit_code = 1

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        out = {"error": type(self).__name__, "message": self.message}
        out.update(self.context)
        return out


class InputError(KirchhoffError, ValueError):
    exit_code = 1


class ParseError(InputError):
    pass


class DanglingReference(InputError):
    pass


class DuplicateId(InputError):
    pass


class NonPositiveValue(InputError):
    pass


class SelfLoop(InputError):
    pass


class UnknownEdge(InputError):
    pass


class InvalidPartition(InputError):
    pass


class InvalidLaplacian(InputError):
    pass


class InconsistentCurrents(InputError):
    pass


class MissingFrequency(InputError):
    pass


class NotResistive(InputError):
    """A real-valued analysis was requested on a network with reactive elements."""


class NumericalError(KirchhoffError, RuntimeError):
    exit_code = 2


class SingularInterior(NumericalError):
    """The interior block L_CC is (numerically) singular."""


class ZeroPivot(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class SingularJacobian(NumericalError):
    pass


class RankDeficient(NumericalError):
    pass


class ResonantInterior(NumericalError):
    """The complex interior block is singular at the requested frequency."""
