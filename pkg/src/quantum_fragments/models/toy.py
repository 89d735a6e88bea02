"""Toy theory models: macrostates over the 2x2 cell grid and the three measurements."""

from enum import Enum
from fractions import Fraction
from typing import Any, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from quantum_fragments.constants import TOL_ALG
from quantum_fragments.exceptions import InvalidStateError

# Cell index -> (row, column) on the grid
CELLS: Tuple[Tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))

HALF = Fraction(1, 2)

# Floats closer than TOL_ALG to a multiple of 1/4 are stored as that multiple
_SNAP_DENOMINATOR = 4


def to_fraction(value: Any) -> Fraction:
    """Convert a probability to an exact rational, snapping float noise onto k/4."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    number = float(value)
    snapped = Fraction(round(number * _SNAP_DENOMINATOR), _SNAP_DENOMINATOR)
    if abs(float(snapped) - number) <= TOL_ALG:
        return snapped
    return Fraction(number)


class ToyMeasurementLabel(str, Enum):
    """The three toy measurements."""

    A = "A"
    B = "B"
    C = "C"


class ToyMacrostate(BaseModel):
    """Probability distribution over the four cells obeying the one-bit restriction."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: Tuple[Fraction, Fraction, Fraction, Fraction] = Field(
        ..., description="Cell probabilities indexed (0,0), (0,1), (1,0), (1,1)"
    )
    label: Optional[str] = Field(None, description="Name of an extremal macrostate, if any")

    @field_validator("p", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Tuple[Fraction, ...]:
        entries = tuple(to_fraction(v) for v in value)
        if len(entries) != len(CELLS):
            raise InvalidStateError(
                f"Toy macrostate needs {len(CELLS)} entries, got {len(entries)}"
            )
        return entries

    @model_validator(mode="after")
    def _check_restriction(self) -> "ToyMacrostate":
        if any(v < 0 for v in self.p):
            raise InvalidStateError(f"Negative cell probability in {self.describe()}")
        if abs(float(sum(self.p)) - 1.0) > TOL_ALG:
            raise InvalidStateError(f"Cell probabilities sum to {float(sum(self.p))}, not 1")
        if any(float(v) > 0.5 + TOL_ALG for v in self.p):
            raise InvalidStateError(
                f"Macrostate {self.describe()} encodes more than one bit about the cell"
            )
        return self

    @field_serializer("p")
    def _serialize(self, p: Tuple[Fraction, ...]) -> Any:
        return [str(v) for v in p]

    def describe(self) -> str:
        return "(" + ", ".join(str(v) for v in self.p) + ")"

    def same_distribution(self, other: "ToyMacrostate") -> bool:
        return self.p == other.p


class ToyMeasurement(BaseModel):
    """Two-outcome measurement that reveals which half of the grid holds the cell."""

    model_config = ConfigDict(frozen=True)

    label: ToyMeasurementLabel = Field(..., description="A, B or C")
    partition: Tuple[Tuple[int, int], Tuple[int, int]] = Field(
        ..., description="Cell indices of outcome 0 and outcome 1"
    )

    @model_validator(mode="after")
    def _check_partition(self) -> "ToyMeasurement":
        cells = [c for outcome in self.partition for c in outcome]
        if sorted(cells) != list(range(len(CELLS))):
            raise InvalidStateError(
                f"Measurement {self.label.value} partition {self.partition} does not cover the grid"
            )
        return self

    def outcome_of(self, cell: int) -> int:
        """Outcome deterministically revealed by a cell."""
        return 0 if cell in self.partition[0] else 1


class CorrespondenceRow(BaseModel):
    """One cell of the toy/qubit statistics comparison."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    macrostate: str = Field(..., description="Extremal toy macrostate label")
    qubit_state: str = Field(..., description="Corresponding Pauli eigenstate")
    measurement: ToyMeasurementLabel
    pauli_axis: int = Field(..., description="Corresponding Pauli operator index")
    toy: Tuple[Fraction, Fraction]
    quantum: Tuple[Fraction, Fraction]

    @field_serializer("toy", "quantum")
    def _serialize(self, pair: Tuple[Fraction, Fraction]) -> Any:
        return [str(v) for v in pair]

    @property
    def matches(self) -> bool:
        return self.toy == self.quantum
