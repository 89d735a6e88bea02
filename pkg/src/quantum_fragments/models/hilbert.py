"""Finite-dimensional quantum state, operator and basis models."""

from typing import Any, List, Sequence, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from quantum_fragments.constants import MAX_DIM, TOL_ALG
from quantum_fragments.exceptions import (
    DimensionMismatchError,
    InvalidBasisError,
    InvalidStateError,
)


def _frozen_array(value: Any, dtype: Any, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=dtype)
    if array.ndim != ndim:
        raise ValueError(f"Expected a {ndim}-dimensional array, got shape {array.shape}")
    array.setflags(write=False)
    return array


def _complex_pairs(array: np.ndarray) -> Any:
    """Complex entries travel as [re, im] pairs."""
    return np.stack([array.real, array.imag], axis=-1).tolist()


def _from_pairs(value: Any, ndim: int) -> Any:
    """Accept [re, im] pairs in place of complex entries."""
    array = np.asarray(value)
    if array.dtype != complex and array.ndim == ndim + 1 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]
    return value


class StateVector(BaseModel):
    """Unit vector |psi> in C^dim."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    amplitudes: np.ndarray = Field(..., description="Complex amplitudes alpha_j")

    @field_validator("amplitudes", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        return _frozen_array(value, complex, 1)

    @model_validator(mode="after")
    def _check_normalized(self) -> "StateVector":
        if not 1 <= self.dim <= MAX_DIM:
            raise InvalidStateError(f"Dimension {self.dim} outside 1..{MAX_DIM}")
        norm_sq = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm_sq - 1.0) > TOL_ALG:
            raise InvalidStateError(f"State is not normalized: sum |alpha_j|^2 = {norm_sq!r}")
        return self

    @field_serializer("amplitudes")
    def _serialize(self, amplitudes: np.ndarray) -> Any:
        return _complex_pairs(amplitudes)

    @classmethod
    def normalized(cls, values: Sequence[complex]) -> "StateVector":
        """Build a state from unnormalized amplitudes."""
        array = np.asarray(values, dtype=complex)
        norm = np.linalg.norm(array)
        if norm == 0:
            raise InvalidStateError("Cannot normalize the zero vector")
        return cls(amplitudes=array / norm)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "StateVector":
        return cls(amplitudes=_from_pairs(pairs, 1))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def __len__(self) -> int:
        return self.dim


class Operator(BaseModel):
    """Linear operator on C^dim given by its matrix entries."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray = Field(..., description="dim x dim complex matrix")

    @field_validator("entries", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        array = _frozen_array(_from_pairs(value, 2), complex, 2)
        if array.shape[0] != array.shape[1]:
            raise DimensionMismatchError(f"Operator matrix must be square, got {array.shape}")
        if not 1 <= array.shape[0] <= MAX_DIM:
            raise DimensionMismatchError(f"Dimension {array.shape[0]} outside 1..{MAX_DIM}")
        return array

    @field_serializer("entries")
    def _serialize(self, entries: np.ndarray) -> Any:
        return _complex_pairs(entries)

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @property
    def is_unitary(self) -> bool:
        product = self.entries.conj().T @ self.entries
        return bool(np.allclose(product, np.eye(self.dim), rtol=0, atol=TOL_ALG))

    @property
    def is_selfadjoint(self) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, rtol=0, atol=TOL_ALG))

    def __matmul__(self, other: "Operator") -> "Operator":
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Cannot compose dim {self.dim} with dim {other.dim}")
        return Operator(entries=self.entries @ other.entries)


class MeasurementBasis(BaseModel):
    """Complete orthonormal basis {|Phi_j>} describing a projective measurement."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vectors: Tuple[StateVector, ...] = Field(..., description="Basis vectors, one per outcome")

    @model_validator(mode="after")
    def _check_orthonormal(self) -> "MeasurementBasis":
        dims = {v.dim for v in self.vectors}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Basis vectors have mixed dimensions {sorted(dims)}")
        dim = dims.pop()
        if len(self.vectors) != dim:
            raise InvalidBasisError(
                f"Basis of C^{dim} needs {dim} vectors, got {len(self.vectors)}"
            )
        gram = self.matrix.conj().T @ self.matrix
        off_diagonal = np.abs(gram - np.eye(dim)).max()
        if off_diagonal > TOL_ALG:
            raise InvalidBasisError(
                f"Basis is not orthonormal (max Gram deviation {off_diagonal:.3e})"
            )
        return self

    @classmethod
    def from_columns(cls, matrix: np.ndarray) -> "MeasurementBasis":
        columns = np.asarray(matrix, dtype=complex)
        vectors = tuple(StateVector(amplitudes=columns[:, j]) for j in range(columns.shape[1]))
        return cls(vectors=vectors)

    @property
    def dim(self) -> int:
        return self.vectors[0].dim

    @property
    def matrix(self) -> np.ndarray:
        """Basis vectors as the columns of a dim x dim matrix."""
        return np.column_stack([v.amplitudes for v in self.vectors])

    def __len__(self) -> int:
        return len(self.vectors)


class UnitVector(BaseModel):
    """Point on the unit sphere S^2."""

    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float

    @model_validator(mode="after")
    def _check_unit(self) -> "UnitVector":
        norm = float(np.sqrt(self.x**2 + self.y**2 + self.z**2))
        if abs(norm - 1.0) > TOL_ALG:
            raise InvalidStateError(f"Expected a unit vector, got norm {norm!r}")
        return self

    @classmethod
    def from_array(cls, values: Sequence[float], normalize: bool = False) -> Any:
        array = np.asarray(values, dtype=float)
        if array.shape != (3,):
            raise DimensionMismatchError(f"Expected 3 components, got shape {array.shape}")
        if normalize:
            array = array / np.linalg.norm(array)
        return cls(x=float(array[0]), y=float(array[1]), z=float(array[2]))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "UnitVector") -> float:
        return float(self.array @ other.array)

    def as_list(self) -> List[float]:
        return [self.x, self.y, self.z]


class BlochVector(UnitVector):
    """Bloch vector (<sigma_1>, <sigma_2>, <sigma_3>) of a pure qubit state."""

    def __neg__(self) -> "BlochVector":
        return BlochVector(x=-self.x, y=-self.y, z=-self.z)
