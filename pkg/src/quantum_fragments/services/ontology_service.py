"""Ontological models: predictions, Born-rule reproduction, supports and overlaps."""

import logging
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from quantum_fragments.constants import TOL_ALG, TOL_SUPPORT
from quantum_fragments.exceptions import DimensionMismatchError, InvalidParameterError
from quantum_fragments.models.hilbert import MeasurementBasis, StateVector
from quantum_fragments.models.ontology import (
    FiniteOntologicalModel,
    OverlapReport,
    QuantumAssignment,
    ReproductionReport,
)
from quantum_fragments.services import hilbert_service

logger = logging.getLogger(__name__)


def predicted_distribution(model: FiniteOntologicalModel, prep: str, meas: str) -> np.ndarray:
    """sum_lambda p(k|lambda) p(lambda|Psi) for every outcome k."""
    return model.preparation(prep) @ model.response(meas)


def predicted_probability(
    model: FiniteOntologicalModel, prep: str, meas: str, outcome: int
) -> float:
    distribution = predicted_distribution(model, prep, meas)
    if not 0 <= outcome < distribution.shape[0]:
        raise InvalidParameterError(
            f"Outcome {outcome} outside 0..{distribution.shape[0] - 1} for '{meas}'"
        )
    return float(distribution[outcome])


def reproduces_quantum(
    model: FiniteOntologicalModel, qa: QuantumAssignment, tol: float = TOL_ALG
) -> ReproductionReport:
    """Compare every (preparation, measurement, outcome) prediction with the Born rule."""
    worst = 0.0
    offending: Optional[Tuple[str, str, int]] = None
    checked = 0
    for prep, state in qa.states.items():
        for meas, basis in qa.bases.items():
            if model.outcome_count(meas) != len(basis):
                raise DimensionMismatchError(
                    f"Measurement '{meas}' has {model.outcome_count(meas)} outcomes in the model "
                    f"but {len(basis)} in its basis"
                )
            deviations = np.abs(
                predicted_distribution(model, prep, meas)
                - hilbert_service.born_probabilities(state, basis)
            )
            checked += deviations.shape[0]
            k = int(np.argmax(deviations))
            if deviations[k] > worst:
                worst = float(deviations[k])
                offending = (prep, meas, k)
    passed = worst <= tol
    if not passed:
        logger.info(f"Model deviates from the Born rule by {worst:.3e} at {offending}")
    return ReproductionReport(
        max_deviation=worst,
        tolerance=tol,
        passed=passed,
        offending=None if passed else offending,
        checked=checked,
    )


def orthodox_model_from_assignment(qa: QuantumAssignment) -> FiniteOntologicalModel:
    """Lambda is the state itself: point-mass preparations, Born-rule responses.

    States equal up to a global phase share one ontic state.
    """
    distinct: List[StateVector] = []
    index_of = {}
    for label, state in qa.states.items():
        for i, other in enumerate(distinct):
            if hilbert_service.states_equal(state, other):
                index_of[label] = i
                break
        else:
            index_of[label] = len(distinct)
            distinct.append(state)
    n = len(distinct)
    preparations = {}
    for label in qa.states:
        point = np.zeros(n)
        point[index_of[label]] = 1.0
        preparations[label] = point
    responses = {
        meas: np.array([hilbert_service.born_probabilities(s, basis) for s in distinct])
        for meas, basis in qa.bases.items()
    }
    return FiniteOntologicalModel(lambda_count=n, preparations=preparations, responses=responses)


def orthodox_model(
    states: Sequence[StateVector], bases: Sequence[MeasurementBasis]
) -> FiniteOntologicalModel:
    """Orthodox model labelled psi<i> / basis<i> as in QuantumAssignment.from_lists."""
    return orthodox_model_from_assignment(QuantumAssignment.from_lists(states, bases))


def support(model: FiniteOntologicalModel, prep: str, tol: float = TOL_SUPPORT) -> FrozenSet[int]:
    """Ontic states given more than tol probability by the preparation."""
    return frozenset(int(i) for i in np.flatnonzero(model.preparation(prep) > tol))


def overlap(
    model: FiniteOntologicalModel, prep1: str, prep2: str, tol: float = TOL_SUPPORT
) -> OverlapReport:
    p1 = model.preparation(prep1)
    p2 = model.preparation(prep2)
    minima = np.minimum(p1, p2)
    common = (p1 > tol) & (p2 > tol)
    return OverlapReport(
        variational_overlap=float(minima.sum()),
        common_support_mass=float(minima[common].sum()),
    )
