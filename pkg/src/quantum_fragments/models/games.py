"""Models for the CHSH game, the Hardy bound and the PBR argument."""

from enum import Enum
from typing import Any, List, Optional, Tuple, Union

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
    InvalidOperatorError,
    InvalidStateError,
)
from quantum_fragments.models.hilbert import Operator, StateVector


class Answer(str, Enum):
    YES = "yes"
    NO = "no"


class DeterministicStrategy(BaseModel):
    """Answers fixed in advance for each question."""

    model_config = ConfigDict(frozen=True)

    a0: Answer = Field(..., description="Alice's answer to question 0")
    a1: Answer = Field(..., description="Alice's answer to question 1")
    b0: Answer = Field(..., description="Bob's answer to question 0")
    b1: Answer = Field(..., description="Bob's answer to question 1")

    def alice(self, x: int) -> Answer:
        return self.a1 if x else self.a0

    def bob(self, y: int) -> Answer:
        return self.b1 if y else self.b0

    def describe(self) -> str:
        return f"A=({self.a0.value},{self.a1.value}) B=({self.b0.value},{self.b1.value})"


class LHVModel(BaseModel):
    """Locally causal model: shared lambda, factorised answer probabilities."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    weights: np.ndarray = Field(..., description="p(lambda) over a finite Lambda")
    alice_yes: np.ndarray = Field(..., description="Lambda x 2 table of p(A_x = yes | x, lambda)")
    bob_yes: np.ndarray = Field(..., description="Lambda x 2 table of p(B_y = yes | y, lambda)")

    @field_validator("weights", "alice_yes", "bob_yes", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> np.ndarray:
        array = np.array(value, dtype=float)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _check_tables(self) -> "LHVModel":
        size = self.weights.shape[0] if self.weights.ndim == 1 else -1
        if size < 1:
            raise DimensionMismatchError(
                f"Weights must be a non-empty vector, got {self.weights.shape}"
            )
        if np.any(self.weights < -TOL_ALG) or abs(float(self.weights.sum()) - 1.0) > TOL_ALG:
            raise InvalidStateError("Lambda weights are not a probability vector")
        for name, table in (("alice_yes", self.alice_yes), ("bob_yes", self.bob_yes)):
            if table.shape != (size, 2):
                raise DimensionMismatchError(
                    f"{name} has shape {table.shape}, expected ({size}, 2)"
                )
            if np.any(table < -TOL_ALG) or np.any(table > 1 + TOL_ALG):
                raise InvalidStateError(f"{name} has entries outside [0, 1]")
        return self

    @field_serializer("weights", "alice_yes", "bob_yes")
    def _serialize(self, array: np.ndarray) -> Any:
        return array.tolist()

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])


class QuantumStrategy(BaseModel):
    """Shared two-qubit state plus +-1 valued local observables and answer maps."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shared_state: StateVector = Field(..., description="Two-qubit state shared by the players")
    alice_observables: Tuple[Operator, Operator] = Field(..., description="Observable per question")
    bob_observables: Tuple[Operator, Operator] = Field(..., description="Observable per question")
    alice_answers: Tuple[Answer, Answer] = Field(
        (Answer.NO, Answer.YES), description="Alice's answers for eigenvalues (+1, -1)"
    )
    bob_answers: Tuple[Answer, Answer] = Field(
        (Answer.YES, Answer.NO), description="Bob's answers for eigenvalues (+1, -1)"
    )

    @model_validator(mode="after")
    def _check_observables(self) -> "QuantumStrategy":
        if self.shared_state.dim != 4:
            raise DimensionMismatchError(
                f"Shared state must be two qubits (dim 4), got dim {self.shared_state.dim}"
            )
        for observable in (*self.alice_observables, *self.bob_observables):
            if observable.dim != 2:
                raise DimensionMismatchError(
                    f"Local observables act on a qubit, got dim {observable.dim}"
                )
            if not observable.is_selfadjoint:
                raise InvalidOperatorError("Local observable is not selfadjoint")
            spectrum = np.linalg.eigvalsh(observable.entries)
            if not np.allclose(np.abs(spectrum), 1.0, rtol=0, atol=TOL_ALG):
                raise InvalidOperatorError(f"Observable spectrum {spectrum} is not +-1 valued")
        return self


GameStrategy = Union[DeterministicStrategy, LHVModel, QuantumStrategy]


class SimulationResult(BaseModel):
    """Empirical win frequency of a simulated game with a binomial 3-sigma interval."""

    rounds: int
    wins: int
    frequency: float
    analytic: float
    sigma: float = Field(..., description="Binomial standard error at the analytic value")

    @property
    def lower(self) -> float:
        return self.analytic - 3 * self.sigma

    @property
    def upper(self) -> float:
        return self.analytic + 3 * self.sigma

    @property
    def within_three_sigma(self) -> bool:
        return self.lower <= self.frequency <= self.upper


class WitnessKind(str, Enum):
    STATISTICS = "statistics"
    CERTAINTY = "certainty"
    SUPPORT_COLLISION = "support_collision"
    CAPACITY = "capacity"


class HardyWitness(BaseModel):
    """Concrete reason a model cannot reproduce the Hardy family."""

    kind: WitnessKind
    j: int = Field(..., description="Index of the prepared state")
    k: Optional[int] = Field(None, description="Second state index for pairwise witnesses")
    lambda_index: Optional[int] = Field(None, description="Ontic state where certainty fails")
    deviation: Optional[float] = Field(None, description="Size of the violation")
    detail: str = ""


class HardyVerdict(BaseModel):
    m: int = Field(..., description="Number M of states in the family")
    lambda_count: int = Field(..., description="Number N of ontic states")
    reproduces: bool = Field(..., description="All checks passed")
    max_deviation: float = Field(..., description="Largest Born-rule deviation found")
    distinct_support_count: int
    required_bound: int = Field(..., description="ceil(log2 M), the fewest ontic bits needed")
    witness: Optional[HardyWitness] = None
    collision: Optional[Tuple[int, int]] = Field(
        None, description="Two states with identical supports, when any exist"
    )

    @model_validator(mode="after")
    def _check_consistency(self) -> "HardyVerdict":
        if self.reproduces and self.distinct_support_count != self.m:
            raise InvalidStateError("An accepted verdict must have M distinct supports")
        return self


class PBROutcomeRow(BaseModel):
    outcome: str = Field(..., description="Entangled outcome label Phi_jk")
    forbidden_by: str = Field(..., description="Product preparation Psi_jk that never yields it")
    born_probability: float = Field(..., description="|<Phi_jk|Psi_jk>|^2, zero in theory")
    common_square_mass: float = Field(
        ..., description="Mass Psi_jk puts on pairs drawn from the common support"
    )


class PBRReport(BaseModel):
    p_star: float = Field(..., description="Common-support mass P* of the single-system model")
    deficit: float = Field(
        ..., description="Mass on pairs where every outcome is forbidden, at least P*^2"
    )
    inconsistent: bool = Field(..., description="Model contradicts quantum theory")
    outcomes: List[PBROutcomeRow] = Field(default_factory=list)

    @property
    def bound(self) -> float:
        return self.p_star**2


class MoseleyResult(BaseModel):
    overlap_sq: float = Field(..., description="|<Psi1|Psi2>|^2 of the single copies")
    copies: int = Field(..., description="Smallest n with overlap_sq^n < 1/2")
    n_copy_overlap_sq: float
    mapping_constructed: bool = Field(
        False, description="The map onto (|0>, |+>) is cited, not built"
    )
