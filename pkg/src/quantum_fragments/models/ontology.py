"""Ontological model types: finite state spaces, quantum bindings and sphere points."""

from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from quantum_fragments.constants import TOL_ALG
from quantum_fragments.exceptions import (
    DimensionMismatchError,
    InvalidStateError,
    UnknownLabelError,
)
from quantum_fragments.models.hilbert import MeasurementBasis, StateVector, UnitVector


Location = Tuple[Union[str, int], ...]


def _table(value: Any, ndim: int, location: Location = ()) -> np.ndarray:
    try:
        array = np.array(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise InvalidStateError(
            f"Expected a {ndim}-dimensional table of numbers, got {value!r}", location=location
        ) from e
    if array.ndim != ndim:
        raise InvalidStateError(
            f"Expected a {ndim}-dimensional table, got shape {array.shape}", location=location
        )
    array.setflags(write=False)
    return array


def _labelled_tables(value: Any, ndim: int) -> Dict[str, np.ndarray]:
    if not isinstance(value, Mapping):
        raise InvalidStateError(f"Expected an object of label -> table, got {value!r}")
    return {str(label): _table(rows, ndim, (str(label),)) for label, rows in value.items()}


class SpherePoint(UnitVector):
    """Ontic state of the sphere model: a point lambda on S^2."""


class FiniteOntologicalModel(BaseModel):
    """Finite ontic state space with preparation distributions and response functions."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_count: int = Field(..., gt=0, description="Number N of ontic states")
    preparations: Dict[str, np.ndarray] = Field(
        ..., description="Preparation label -> distribution p(lambda|Psi) over N states"
    )
    responses: Dict[str, np.ndarray] = Field(
        default_factory=dict,
        description="Measurement label -> N x K table of outcome probabilities p(k|lambda)",
    )

    @field_validator("preparations", mode="before")
    @classmethod
    def _coerce_preparations(cls, value: Any) -> Dict[str, np.ndarray]:
        return _labelled_tables(value, 1)

    @field_validator("responses", mode="before")
    @classmethod
    def _coerce_responses(cls, value: Any) -> Dict[str, np.ndarray]:
        return _labelled_tables(value, 2)

    @model_validator(mode="after")
    def _check_normalized(self) -> "FiniteOntologicalModel":
        n = self.lambda_count
        for label, distribution in self.preparations.items():
            if distribution.shape != (n,):
                raise DimensionMismatchError(
                    f"Preparation '{label}' has {distribution.shape[0]} entries, expected {n}"
                )
            negative = np.flatnonzero(distribution < -TOL_ALG)
            if negative.size:
                raise InvalidStateError(
                    f"Preparation '{label}' is negative at lambda {int(negative[0])}",
                    location=("preparations", label, int(negative[0])),
                )
            total = float(distribution.sum())
            if abs(total - 1.0) > TOL_ALG:
                raise InvalidStateError(
                    f"Preparation '{label}' sums to {total!r}, not 1",
                    location=("preparations", label),
                )
        for label, table in self.responses.items():
            if table.shape[0] != n or table.shape[1] < 1:
                raise DimensionMismatchError(
                    f"Response '{label}' has shape {table.shape}, expected ({n}, K)"
                )
            out_of_range = np.argwhere((table < -TOL_ALG) | (table > 1 + TOL_ALG))
            if out_of_range.size:
                row, outcome = (int(i) for i in out_of_range[0])
                raise InvalidStateError(
                    f"Response '{label}' row {row} outcome {outcome} is outside [0, 1]",
                    location=("responses", label, row, outcome),
                )
            sums = table.sum(axis=1)
            bad = np.flatnonzero(np.abs(sums - 1.0) > TOL_ALG)
            if bad.size:
                row = int(bad[0])
                raise InvalidStateError(
                    f"Response '{label}' row {row} sums to {float(sums[row])!r}, not 1",
                    location=("responses", label, row),
                )
        return self

    @field_serializer("preparations", "responses")
    def _serialize(self, tables: Dict[str, np.ndarray]) -> Dict[str, Any]:
        return {label: table.tolist() for label, table in tables.items()}

    def preparation(self, label: str) -> np.ndarray:
        if label not in self.preparations:
            raise UnknownLabelError(
                f"Unknown preparation '{label}'. Available: {', '.join(self.preparations)}"
            )
        return self.preparations[label]

    def response(self, label: str) -> np.ndarray:
        if label not in self.responses:
            raise UnknownLabelError(
                f"Unknown measurement '{label}'. Available: {', '.join(self.responses)}"
            )
        return self.responses[label]

    def outcome_count(self, label: str) -> int:
        return int(self.response(label).shape[1])

    def with_preparation(
        self, label: str, distribution: Sequence[float]
    ) -> "FiniteOntologicalModel":
        """Copy of the model with one more (or a replaced) preparation."""
        preparations = dict(self.preparations)
        preparations[label] = np.asarray(distribution, dtype=float)
        data = {name: getattr(self, name) for name in type(self).model_fields}
        data["preparations"] = preparations
        return type(self)(**data)

    def mix(self, weights: Dict[str, float], label: str) -> "FiniteOntologicalModel":
        """Add the convex mixture sum_i w_i p(lambda|Psi_i) as a new preparation."""
        total = sum(weights.values())
        if abs(total - 1.0) > TOL_ALG or any(w < 0 for w in weights.values()):
            raise InvalidStateError(f"Mixture weights must be a probability vector, got {weights}")
        mixture = sum(w * self.preparation(name) for name, w in weights.items())
        return self.with_preparation(label, np.asarray(mixture))

    def to_document(self) -> Dict[str, Any]:
        return self.model_dump()


class ModelDocument(FiniteOntologicalModel):
    """Model file contents: a finite model plus labels bound to named quantum objects."""

    bindings: Dict[str, str] = Field(
        default_factory=dict, description="Label -> quantum object name such as '|+>'"
    )


class QuantumAssignment(BaseModel):
    """Binds model labels to the states and bases they stand for."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    states: Dict[str, StateVector] = Field(..., description="Preparation label -> state")
    bases: Dict[str, MeasurementBasis] = Field(..., description="Measurement label -> basis")

    @model_validator(mode="after")
    def _check_dims(self) -> "QuantumAssignment":
        dims = {s.dim for s in self.states.values()} | {b.dim for b in self.bases.values()}
        if len(dims) > 1:
            raise DimensionMismatchError(f"Assignment mixes dimensions {sorted(dims)}")
        return self

    @classmethod
    def from_lists(
        cls, states: Sequence[StateVector], bases: Sequence[MeasurementBasis]
    ) -> "QuantumAssignment":
        """Default labels psi<i> and basis<i>."""
        return cls(
            states={f"psi{i}": s for i, s in enumerate(states)},
            bases={f"basis{i}": b for i, b in enumerate(bases)},
        )

    def state(self, label: str) -> StateVector:
        if label not in self.states:
            raise UnknownLabelError(f"No state bound to '{label}'")
        return self.states[label]

    def basis(self, label: str) -> MeasurementBasis:
        if label not in self.bases:
            raise UnknownLabelError(f"No basis bound to '{label}'")
        return self.bases[label]


class ReproductionReport(BaseModel):
    """Outcome of comparing a model's predictions with the Born rule."""

    max_deviation: float = Field(..., description="Largest |model - Born| over all triples")
    tolerance: float
    passed: bool
    offending: Optional[Tuple[str, str, int]] = Field(
        None, description="(preparation, measurement, outcome) of the largest deviation"
    )
    checked: int = Field(0, description="Number of triples compared")


class OverlapReport(BaseModel):
    variational_overlap: float = Field(..., description="sum_lambda min(p1, p2)")
    common_support_mass: float = Field(
        ..., description="sum of min(p1, p2) over the common support at the tolerance"
    )


class ConvergencePoint(BaseModel):
    resolution: Tuple[int, int]
    max_error: float


class ConvergenceStudy(BaseModel):
    """Maximum Born-rule deviation of the sphere model per quadrature resolution."""

    pairs: int
    points: List[ConvergencePoint]

    @property
    def monotone(self) -> bool:
        errors = [p.max_error for p in self.points]
        return all(b <= a for a, b in zip(errors, errors[1:]))
