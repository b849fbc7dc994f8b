"""Exception types shared across the package."""


class AccuracyError(RuntimeError):
    """A numerical result could not be certified to the requested accuracy."""


class QuadratureError(AccuracyError):
    """Order doubling changed a quadrature result by more than the tolerance."""


class TruncationError(AccuracyError):
    """A Fock-space cutoff discards too much population."""

    def __init__(self, message: str, tail_mass: float | None = None):
        super().__init__(message)
        self.tail_mass = tail_mass
