"""Gaussian phase-space models with the resolution restriction gamma + i*lambda*Sigma >= 0."""

from typing import Annotated, Any, Dict

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_serializer,
    field_validator,
    model_validator,
)
from scipy import linalg

from quantum_fragments.constants import TOL_ALG, TOL_PSD
from quantum_fragments.exceptions import (
    DimensionMismatchError,
    InvalidOperatorError,
    InvalidStateError,
)

# Resolution scale lambda_rr in phase-space area units (hbar = 1)
RRScale = Annotated[float, Field(ge=0.0)]


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal Sigma with one [[0, -1], [1, 0]] block per mode."""
    block = np.array([[0.0, -1.0], [1.0, 0.0]])
    return linalg.block_diag(*([block] * n_modes))


def psd_tolerance(cov: np.ndarray) -> float:
    """TOL_PSD scaled by max(1, ||gamma||_2)."""
    return TOL_PSD * max(1.0, float(linalg.norm(cov, 2)))


def _real_array(value: Any, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != ndim:
        raise DimensionMismatchError(
            f"Expected a {ndim}-dimensional array, got shape {array.shape}"
        )
    array.setflags(write=False)
    return array


def _even_square(array: np.ndarray, what: str) -> int:
    rows, cols = array.shape
    if rows != cols or rows == 0 or rows % 2:
        raise DimensionMismatchError(f"{what} must be 2N x 2N, got {array.shape}")
    return rows // 2


class GaussianMacrostate(BaseModel):
    """Gaussian distribution on phase space z = (x1, p1, ..., xN, pN).

    Also read as the Wigner function of a Gaussian quantum state when it satisfies
    the resolution restriction.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mean: np.ndarray = Field(..., description="Mean vector <z> of length 2N")
    cov: np.ndarray = Field(..., description="Fluctuation matrix gamma, 2N x 2N")

    @field_validator("mean", mode="before")
    @classmethod
    def _coerce_mean(cls, value: Any) -> np.ndarray:
        return _real_array(value, 1)

    @field_validator("cov", mode="before")
    @classmethod
    def _coerce_cov(cls, value: Any) -> np.ndarray:
        return _real_array(value, 2)

    @model_validator(mode="after")
    def _check_covariance(self) -> "GaussianMacrostate":
        n_modes = _even_square(self.cov, "Covariance")
        if self.mean.shape != (2 * n_modes,):
            raise DimensionMismatchError(
                f"Mean of length {self.mean.shape[0]} does not match {n_modes} modes"
            )
        scale = max(1.0, float(np.abs(self.cov).max()))
        if not np.allclose(self.cov, self.cov.T, rtol=0, atol=TOL_ALG * scale):
            raise InvalidStateError("Covariance matrix is not symmetric")
        smallest = float(linalg.eigvalsh(self.cov)[0])
        if smallest < -psd_tolerance(self.cov):
            raise InvalidStateError(
                f"Covariance matrix is not positive semidefinite (eigenvalue {smallest:.3e})"
            )
        return self

    @field_serializer("mean", "cov")
    def _serialize(self, array: np.ndarray) -> Any:
        return array.tolist()

    @computed_field  # type: ignore[prop-decorator]
    @property
    def n_modes(self) -> int:
        return int(self.mean.shape[0] // 2)

    def to_document(self) -> Dict[str, Any]:
        return self.model_dump(include={"n_modes", "mean", "cov"})


class SymplecticMatrix(BaseModel):
    """Linear phase-space map A obeying A^T Sigma A = Sigma."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray = Field(..., description="2N x 2N real matrix")

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        return _real_array(value, 2)

    @model_validator(mode="after")
    def _check_symplectic(self) -> "SymplecticMatrix":
        n_modes = _even_square(self.matrix, "Symplectic matrix")
        sigma = symplectic_form(n_modes)
        deviation = np.abs(self.matrix.T @ sigma @ self.matrix - sigma).max()
        scale = max(1.0, float(np.abs(self.matrix).max()) ** 2)
        if deviation > TOL_ALG * scale:
            raise InvalidOperatorError(f"Matrix is not symplectic (deviation {deviation:.3e})")
        return self

    @field_serializer("matrix")
    def _serialize(self, matrix: np.ndarray) -> Any:
        return matrix.tolist()

    @property
    def n_modes(self) -> int:
        return int(self.matrix.shape[0] // 2)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if other.n_modes != self.n_modes:
            raise DimensionMismatchError(
                f"Cannot compose {self.n_modes}-mode and {other.n_modes}-mode maps"
            )
        return SymplecticMatrix(matrix=self.matrix @ other.matrix)


class RRCheck(BaseModel):
    satisfied: bool
    margin: float = Field(..., description="Smallest eigenvalue of gamma + i*lambda*Sigma")


class NoCloningReport(BaseModel):
    """Fidelity bookkeeping of a hypothetical cloner for two macrostates."""

    fidelity: float = Field(..., description="F(f, g)")
    fidelity_squared: float = Field(..., description="F(f_S f_C, g_S g_C) after cloning")
    cloning_impossible: bool = Field(..., description="True when 0 < F < 1")


class QuadratureMarginal(BaseModel):
    coordinate: str = Field(..., description="x1, p1, x2, ...")
    mean: float
    variance: float
