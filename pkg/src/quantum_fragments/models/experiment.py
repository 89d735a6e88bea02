"""Experiment configuration and report models."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_serializer, field_validator

from quantum_fragments.constants import (
    DEFAULT_DISPLACEMENT,
    DEFAULT_M,
    DEFAULT_PAIRS,
    DEFAULT_RESOLUTION,
    DEFAULT_RR_SCALE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SQUEEZE,
    DEFAULT_TRIALS,
    MAX_SEED,
    MIN_RESOLUTION,
    REPORT_FORMATS,
    SIGNIFICANT_DIGITS,
)
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.phase_space import RRScale


def parse_resolution(value: Any) -> Tuple[int, int]:
    """Accept '400x800', (400, 800) or [400, 800]."""
    if isinstance(value, str):
        parts = value.lower().split("x")
        if len(parts) != 2:
            raise InvalidParameterError(f"Resolution must look like 400x800, got '{value}'")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidParameterError(f"Resolution must look like 400x800, got '{value}'")
    n_theta, n_phi = value
    return int(n_theta), int(n_phi)


def significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    """Round to a fixed number of significant digits."""
    return float(f"{value:.{digits}g}")


class ExperimentConfig(BaseModel):
    """Parameters of one CLI run."""

    experiment: str = Field(..., description="Subcommand name")
    mode: Optional[str] = Field(None, description="Demo within the subcommand")
    seed: int = Field(DEFAULT_SEED, ge=0, le=MAX_SEED, description="64-bit unsigned seed")
    samples: int = Field(DEFAULT_SAMPLES, ge=1, description="Monte Carlo samples or rounds")
    resolution: Tuple[int, int] = Field(DEFAULT_RESOLUTION, description="(n_theta, n_phi) grid")
    m: int = Field(DEFAULT_M, ge=2, description="Size M of the Hardy family")
    rr_scale: RRScale = Field(DEFAULT_RR_SCALE, description="Resolution scale lambda_rr")
    squeeze: float = Field(DEFAULT_SQUEEZE, gt=0, description="EPR squeezing width s")
    displacement: float = Field(DEFAULT_DISPLACEMENT, description="EPR offset c")
    trials: int = Field(DEFAULT_TRIALS, ge=1, description="Size of random sweeps")
    pairs: int = Field(DEFAULT_PAIRS, ge=1, description="Random state pairs for sphere checks")
    format: str = Field("json", description="Report format")
    model: Optional[Path] = Field(None, description="Ontological model file")
    state: str = Field("a", description="Initial toy macrostate")
    sequence: List[str] = Field(default_factory=list, description="Toy measurement sequence")

    @field_validator("resolution", mode="before")
    @classmethod
    def _parse_resolution(cls, value: Any) -> Tuple[int, int]:
        resolution = parse_resolution(value)
        if resolution[0] < MIN_RESOLUTION[0] or resolution[1] < MIN_RESOLUTION[1]:
            raise InvalidParameterError(
                f"Resolution {resolution[0]}x{resolution[1]} is below the minimum "
                f"{MIN_RESOLUTION[0]}x{MIN_RESOLUTION[1]}"
            )
        return resolution

    @field_validator("format")
    @classmethod
    def _check_format(cls, value: str) -> str:
        if value not in REPORT_FORMATS:
            raise InvalidParameterError(
                f"Unknown format '{value}'. Available: {', '.join(REPORT_FORMATS)}"
            )
        return value

    @field_validator("sequence", mode="before")
    @classmethod
    def _split_sequence(cls, value: Any) -> List[str]:
        if isinstance(value, str):
            return [part.strip() for part in value.split(",") if part.strip()]
        return list(value)

    def parameters(self) -> Dict[str, Any]:
        """Echo of the parameters that influence the report."""
        data = self.model_dump(mode="json", exclude={"format"})
        data["resolution"] = f"{self.resolution[0]}x{self.resolution[1]}"
        return data


class Comparison(str, Enum):
    """How a computed value is held against its analytic reference."""

    EQ = "eq"
    LE = "le"
    GE = "ge"


class ResultRow(BaseModel):
    name: str = Field(..., description="What was measured")
    analytic: Optional[float] = Field(None, description="Reference value, when one exists")
    computed: Union[float, str] = Field(..., description="Value produced by the run")
    tolerance: Optional[float] = Field(None, description="Allowed slack against the reference")
    comparison: Comparison = Field(Comparison.EQ)
    passed: Optional[bool] = Field(None, description="None for informational rows")

    @classmethod
    def check(
        cls,
        name: str,
        analytic: float,
        computed: float,
        tolerance: float,
        comparison: Comparison = Comparison.EQ,
    ) -> "ResultRow":
        if comparison is Comparison.EQ:
            passed = abs(computed - analytic) <= tolerance
        elif comparison is Comparison.LE:
            passed = computed <= analytic + tolerance
        else:
            passed = computed >= analytic - tolerance
        return cls(
            name=name,
            analytic=float(analytic),
            computed=float(computed),
            tolerance=float(tolerance),
            comparison=comparison,
            passed=bool(passed),
        )

    @classmethod
    def flag(cls, name: str, ok: bool, detail: str = "") -> "ResultRow":
        """Pass/fail row for a predicate without a numeric reference."""
        return cls(name=name, computed=detail or str(ok).lower(), passed=bool(ok))

    @classmethod
    def info(cls, name: str, computed: Union[float, str]) -> "ResultRow":
        return cls(name=name, computed=computed)

    @field_serializer("analytic", "computed", "tolerance")
    def _round(self, value: Union[float, str, None]) -> Union[float, str, None]:
        if isinstance(value, float):
            return significant(value)
        return value


class Report(BaseModel):
    experiment: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    rows: List[ResultRow] = Field(default_factory=list)
    duration_seconds: float = 0.0

    @field_serializer("duration_seconds")
    def _round_duration(self, value: float) -> float:
        return significant(value, 6)

    @property
    def passed(self) -> bool:
        return all(row.passed is not False for row in self.rows)
