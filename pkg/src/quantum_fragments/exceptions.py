"""Error hierarchy shared by models, services and the CLI."""

from typing import Optional, Tuple, Union


class FragmentsError(ValueError):
    """Base class for every domain error raised by the toolkit."""


class DimensionMismatchError(FragmentsError):
    """Operands live in Hilbert or phase spaces of different dimension."""


class InvalidStateError(FragmentsError):
    """A state, macrostate or distribution violates its invariants.

    location names the offending entry inside a model document, e.g.
    ("preparations", "psi1") or ("responses", "Z", 3).
    """

    def __init__(self, message: str, location: Tuple[Union[str, int], ...] = ()):
        self.location = location
        super().__init__(message)


class InvalidOperatorError(FragmentsError):
    """An operator is not unitary, selfadjoint, symplectic or +-1 valued as required."""


class InvalidBasisError(FragmentsError):
    """A measurement basis is not orthonormal or not complete."""


class ForbiddenOutcomeError(FragmentsError):
    """Collapse was requested onto an outcome of zero probability."""


class UnknownLabelError(FragmentsError, KeyError):
    """A preparation, measurement or binding label does not exist."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidParameterError(FragmentsError):
    """A numeric parameter is outside its allowed range."""


class ModelFileError(FragmentsError):
    """A model file could not be read or failed validation."""

    def __init__(self, message: str, json_path: Optional[str] = None):
        self.json_path = json_path
        if json_path:
            message = f"{json_path}: {message}"
        super().__init__(message)
