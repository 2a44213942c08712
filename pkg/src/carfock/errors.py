"""Exception hierarchy shared by all carfock modules."""


class CarFockError(Exception):
    """Base class for all library errors."""


class WidthError(CarFockError):
    """Occupation string width does not match the governing mode order."""


class ZeroStateError(CarFockError):
    """All amplitudes pruned to zero where a nonzero ket is required."""


class ModeSetError(CarFockError):
    """Mode labels do not match the mode set an operation expects."""


class SizeError(CarFockError):
    """Problem dimension exceeds the supported cap."""


class NormError(CarFockError):
    """Input state is not normalized where normalization is required."""


class KeepSetError(CarFockError):
    """Kept-mode set for a partial trace is empty or covers every mode."""


class HermiticityError(CarFockError):
    """Matrix is not Hermitian within tolerance."""


class ConvergenceError(CarFockError):
    """Iterative solver failed to converge within its sweep budget."""


class PositivityError(CarFockError):
    """Eigenvalue below the negative tolerance where positivity is required."""


class PartitionError(CarFockError):
    """Bipartition does not disjointly cover the mode set."""


class ParseError(CarFockError):
    """State expression syntax error, with position information."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class SsrError(CarFockError):
    """Superselection violation under --enforce-ssr."""


class DemoFailure(CarFockError):
    """A walkthrough check deviated from its expected value."""

    def __init__(self, check: str, message: str):
        super().__init__(f"check '{check}' failed: {message}")
        self.check = check
