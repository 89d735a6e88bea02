"""Hardy's bound: a model reproducing M nonorthogonal qubit states needs 2^N >= M ontic states."""

import logging
import math
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from quantum_fragments.constants import TOL_HARDY, TOL_SUPPORT
from quantum_fragments.exceptions import InvalidParameterError, UnknownLabelError
from quantum_fragments.models.games import HardyVerdict, HardyWitness, WitnessKind
from quantum_fragments.models.hilbert import StateVector
from quantum_fragments.models.ontology import FiniteOntologicalModel, QuantumAssignment
from quantum_fragments.services import hilbert_service, ontology_service

logger = logging.getLogger(__name__)


def hardy_state(m: int, j: int) -> StateVector:
    """cos(j pi / 2M)|0> + sin(j pi / 2M)|1>."""
    if m < 2:
        raise InvalidParameterError(f"Hardy family needs M >= 2, got {m}")
    if not 0 <= j < m:
        raise InvalidParameterError(f"Hardy index {j} outside 0..{m - 1}")
    return hilbert_service.state_from_angles(j * math.pi / m, 0.0)


def hardy_states(m: int) -> List[StateVector]:
    return [hardy_state(m, j) for j in range(m)]


def hardy_assignment(m: int) -> QuantumAssignment:
    """psi<j> bound to |Psi_j>, basis<j> to {|Psi_j>, its complement}."""
    states = hardy_states(m)
    bases = [hilbert_service.basis_containing(s) for s in states]
    return QuantumAssignment.from_lists(states, bases)


def _certain_outcomes(qa: QuantumAssignment) -> List[Tuple[str, str, int]]:
    """(preparation, measurement, outcome) where outcome is |Psi_j> itself, per state j."""
    result = []
    for prep, state in qa.states.items():
        for meas, basis in qa.bases.items():
            matches = [
                k for k, v in enumerate(basis.vectors) if hilbert_service.states_equal(v, state)
            ]
            if matches:
                result.append((prep, meas, matches[0]))
                break
        else:
            raise UnknownLabelError(f"No bound basis contains the state of '{prep}'")
    return result


def hardy_check(
    model: FiniteOntologicalModel, qa: QuantumAssignment, tol: float = TOL_HARDY
) -> HardyVerdict:
    """Run the support argument on a model claiming to reproduce the bound states.

    Checks, in order: Born statistics within tol; certainty p(Psi_j|lambda) = 1 on the
    support of each Psi_j; pairwise distinct supports; 2^N >= M. The first failure
    becomes the witness.
    """
    preps = list(qa.states)
    m = len(preps)
    if m < 2:
        raise InvalidParameterError(f"Hardy check needs at least two states, got {m}")
    index = {label: j for j, label in enumerate(preps)}
    meas_index = {label: k for k, label in enumerate(qa.bases)}
    witness: Optional[HardyWitness] = None

    reproduction = ontology_service.reproduces_quantum(model, qa, tol)
    if not reproduction.passed and reproduction.offending is not None:
        prep, meas, _ = reproduction.offending
        witness = HardyWitness(
            kind=WitnessKind.STATISTICS,
            j=index[prep],
            k=meas_index[meas],
            deviation=reproduction.max_deviation,
            detail=f"{prep} measured in {meas} deviates by {reproduction.max_deviation:.3e}",
        )

    supports: Dict[str, FrozenSet[int]] = {
        label: ontology_service.support(model, label, TOL_SUPPORT) for label in preps
    }

    if witness is None:
        for prep, meas, outcome in _certain_outcomes(qa):
            responses = model.response(meas)[:, outcome]
            for lam in sorted(supports[prep]):
                if responses[lam] < 1.0 - tol:
                    witness = HardyWitness(
                        kind=WitnessKind.CERTAINTY,
                        j=index[prep],
                        lambda_index=lam,
                        deviation=float(1.0 - responses[lam]),
                        detail=f"p({prep}|lambda={lam}) = {responses[lam]:.6g} on its own support",
                    )
                    break
            if witness is not None:
                break

    collision: Optional[Tuple[int, int]] = None
    first_with: Dict[FrozenSet[int], int] = {}
    for label in preps:
        j = index[label]
        if supports[label] in first_with and collision is None:
            collision = (first_with[supports[label]], j)
        first_with.setdefault(supports[label], j)
    distinct = len(first_with)

    if witness is None and collision is not None:
        witness = HardyWitness(
            kind=WitnessKind.SUPPORT_COLLISION,
            j=collision[0],
            k=collision[1],
            detail=(
                f"States {collision[0]} and {collision[1]} share the support "
                f"{sorted(supports[preps[collision[1]]])}"
            ),
        )

    n = model.lambda_count
    if witness is None and 2**n < m:
        witness = HardyWitness(
            kind=WitnessKind.CAPACITY, j=0, detail=f"2^{n} < {m} leaves too few supports"
        )

    verdict = HardyVerdict(
        m=m,
        lambda_count=n,
        reproduces=witness is None,
        max_deviation=reproduction.max_deviation,
        distinct_support_count=distinct,
        required_bound=math.ceil(math.log2(m)),
        witness=witness,
        collision=collision,
    )
    if witness is not None:
        logger.info(f"Hardy check rejected model with N = {n}, M = {m}: {witness.kind.value}")
    return verdict


def coarse_hardy_model(m: int, n: int) -> FiniteOntologicalModel:
    """N-point model that sends each of the M states to the nearest of N representatives.

    Responses are the Born probabilities of the representative, so whenever N < M
    two states share a support and their statistics cannot all be right.
    """
    if n < 1:
        raise InvalidParameterError(f"Need at least one ontic state, got {n}")
    states = hardy_states(m)
    representatives = np.unique(np.round(np.linspace(0, m - 1, n)).astype(int))
    preparations = {}
    for j in range(m):
        nearest = int(np.argmin(np.abs(representatives - j)))
        point = np.zeros(len(representatives))
        point[nearest] = 1.0
        preparations[f"psi{j}"] = point
    responses = {}
    for k, state in enumerate(states):
        basis = hilbert_service.basis_containing(state)
        responses[f"basis{k}"] = np.array(
            [hilbert_service.born_probabilities(states[r], basis) for r in representatives]
        )
    return FiniteOntologicalModel(
        lambda_count=len(representatives), preparations=preparations, responses=responses
    )
