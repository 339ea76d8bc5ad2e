"""Exception types raised by star_lebesgue."""


class DimensionMismatch(ValueError):
    """Raised when vectors, matrices or functionals do not fit the algebra."""


class RepresentabilityError(ValueError):
    """Raised when a functional fails its representability certificate.

    The failing certificate is available as ``certificate``.
    """

    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


class ConsistencyError(ArithmeticError):
    """A computed object failed a structural check that theory guarantees.

    This signals a numerical rank misjudgment or a bug, never a genuine
    counterexample.
    """

    def __init__(self, msg, residual=float("nan")):
        super().__init__(msg)
        self.residual = residual
