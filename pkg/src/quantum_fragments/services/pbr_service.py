"""Preparation independence versus overlapping preparations of |0> and |+>."""

import logging
import math
from itertools import product
from typing import Dict, List

import numpy as np

from quantum_fragments.constants import PBR_FIRST, PBR_SECOND, TOL_SUPPORT
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.games import MoseleyResult, PBROutcomeRow, PBRReport
from quantum_fragments.models.hilbert import MeasurementBasis, StateVector
from quantum_fragments.models.ontology import FiniteOntologicalModel, ModelDocument
from quantum_fragments.services import hilbert_service

logger = logging.getLogger(__name__)

# Single-system preparations: psi1 -> |0>, psi2 -> |+>
SINGLE_STATES = {PBR_FIRST: "|0>", PBR_SECOND: "|+>"}
_INDICES = ("1", "2")

# Rounding band around 1/2 in moseley_copies
HALF_ULPS = 8 * float(np.finfo(float).eps)


def _joint_label(j: str, k: str) -> str:
    return f"Psi{j}{k}"


def pbr_preparations() -> Dict[str, StateVector]:
    """Psi_jk = Psi_j (x) Psi_k with Psi_1 = |0> and Psi_2 = |+>."""
    single = [
        hilbert_service.ket(SINGLE_STATES[PBR_FIRST]),
        hilbert_service.ket(SINGLE_STATES[PBR_SECOND]),
    ]
    return {
        _joint_label(_INDICES[j], _INDICES[k]): hilbert_service.tensor(single[j], single[k])
        for j, k in product(range(2), range(2))
    }


def pbr_outcome_labels() -> List[str]:
    return [f"Phi{j}{k}" for j, k in product(_INDICES, _INDICES)]


def pbr_basis() -> MeasurementBasis:
    """Entangled basis whose outcome Phi_jk never occurs on Psi_jk."""
    zero, one = hilbert_service.ket("|0>"), hilbert_service.ket("|1>")
    plus, minus = hilbert_service.ket("|+>"), hilbert_service.ket("|->")

    def pair(a: StateVector, b: StateVector, c: StateVector, d: StateVector) -> StateVector:
        amplitudes = (
            hilbert_service.tensor(a, b).amplitudes + hilbert_service.tensor(c, d).amplitudes
        )
        return StateVector(amplitudes=amplitudes / math.sqrt(2))

    return MeasurementBasis(
        vectors=(
            pair(zero, one, one, zero),
            pair(zero, minus, one, plus),
            pair(plus, one, minus, zero),
            pair(plus, minus, minus, plus),
        )
    )


def pbr_product_model(single: FiniteOntologicalModel) -> FiniteOntologicalModel:
    """Lambda x Lambda with p(l1, l2 | Psi_jk) = p(l1 | Psi_j) p(l2 | Psi_k).

    Joint ontic state (l1, l2) has index l1 * N + l2.
    """
    firsts = [single.preparation(PBR_FIRST), single.preparation(PBR_SECOND)]
    preparations = {
        _joint_label(_INDICES[j], _INDICES[k]): np.outer(firsts[j], firsts[k]).reshape(-1)
        for j, k in product(range(2), range(2))
    }
    return FiniteOntologicalModel(
        lambda_count=single.lambda_count**2, preparations=preparations
    )


def pbr_contradiction(single: FiniteOntologicalModel, tol: float = TOL_SUPPORT) -> PBRReport:
    """Mass that preparation independence puts where no measurement outcome is allowed.

    On pairs drawn from the common support S of Psi_1 and Psi_2 every outcome Phi_jk is
    forbidden by Psi_jk, so none may fire there. Under Psi_jk those pairs carry
    (sum_S p_j)(sum_S p_k) >= P*^2; the deficit is the smallest such mass.
    """
    p1 = single.preparation(PBR_FIRST)
    p2 = single.preparation(PBR_SECOND)
    common = (p1 > tol) & (p2 > tol)
    p_star = float(np.minimum(p1, p2)[common].sum())

    joint = pbr_product_model(single)
    square = np.outer(common, common).reshape(-1)
    basis = pbr_basis()
    preparations = pbr_preparations()
    rows = []
    labelled = zip(pbr_outcome_labels(), preparations.items())
    for index, (outcome, (label, state)) in enumerate(labelled):
        born = hilbert_service.born_probabilities(state, basis)
        rows.append(
            PBROutcomeRow(
                outcome=outcome,
                forbidden_by=label,
                born_probability=float(born[index]),
                common_square_mass=float(joint.preparation(label)[square].sum()),
            )
        )
    deficit = min(row.common_square_mass for row in rows)
    inconsistent = p_star > tol
    logger.info(f"PBR check: P* = {p_star:.6g}, deficit = {deficit:.6g}")
    return PBRReport(p_star=p_star, deficit=deficit, inconsistent=inconsistent, outcomes=rows)


def relabel_for_pbr(
    model: FiniteOntologicalModel, first: str, second: str
) -> FiniteOntologicalModel:
    """Single-system model whose preparations first/second play Psi_1/Psi_2."""
    return FiniteOntologicalModel(
        lambda_count=model.lambda_count,
        preparations={PBR_FIRST: model.preparation(first), PBR_SECOND: model.preparation(second)},
        responses=model.responses,
    )


def _below_half(value: float) -> bool:
    return value < 0.5 and not math.isclose(value, 0.5, rel_tol=HALF_ULPS, abs_tol=0.0)


def moseley_copies(overlap_sq: float) -> MoseleyResult:
    """Smallest n with overlap_sq^n strictly below 1/2.

    Values within a few ulps of 1/2 count as 1/2, so a computed |<0|+>|^2 of
    0.4999999999999999 still needs two copies.

    n copies of two states have squared overlap overlap_sq^n; below 1/2 they can be
    mapped onto |0> and |+>. That map is cited, not constructed here.
    """
    if not 0 < overlap_sq < 1:
        raise InvalidParameterError(f"Squared overlap must lie in (0, 1), got {overlap_sq}")
    n = max(1, math.ceil(math.log(0.5) / math.log(overlap_sq)))
    while not _below_half(overlap_sq**n):
        n += 1
    while n > 1 and _below_half(overlap_sq ** (n - 1)):
        n -= 1
    return MoseleyResult(overlap_sq=overlap_sq, copies=n, n_copy_overlap_sq=overlap_sq**n)


def single_system_assignment_labels() -> Dict[str, str]:
    """Bindings of the generated single-system models."""
    return {PBR_FIRST: "|0>", PBR_SECOND: "|+>", "Z": "|0>", "X": "|+>"}


def random_overlapping_model(
    rng: np.random.Generator, tol: float = TOL_SUPPORT, max_points: int = 6
) -> ModelDocument:
    """Random single-system model of |0> and |+> reproducing the Z and X bases exactly.

    Ontic states carry deterministic (Z, X) outcome types. |0> puts 1/2 on type (0, 0)
    and 1/2 on (0, 1); |+> puts 1/2 on (0, 0) and 1/2 on (1, 0). Each type is split over
    random points, and only some (0, 0) points are shared. Draws with P* <= tol are
    rejected.
    """
    while True:
        shared = int(rng.integers(1, max_points + 1))
        only_first = int(rng.integers(0, max_points + 1))
        only_second = int(rng.integers(0, max_points + 1))
        n01 = int(rng.integers(1, max_points + 1))
        n10 = int(rng.integers(1, max_points + 1))
        n00 = shared + only_first + only_second
        n = n00 + n01 + n10

        first = np.zeros(n)
        second = np.zeros(n)
        first_00 = np.concatenate(
            [rng.dirichlet(np.ones(shared + only_first)), np.zeros(only_second)]
        )
        second_00 = np.zeros(n00)
        split = rng.dirichlet(np.ones(shared + only_second))
        second_00[:shared] = split[:shared]
        second_00[shared + only_first :] = split[shared:]
        first[:n00] = 0.5 * first_00
        second[:n00] = 0.5 * second_00
        first[n00 : n00 + n01] = 0.5 * rng.dirichlet(np.ones(n01))
        second[n00 + n01 :] = 0.5 * rng.dirichlet(np.ones(n10))

        types = [(0, 0)] * n00 + [(0, 1)] * n01 + [(1, 0)] * n10
        order = rng.permutation(n)
        first, second = first[order], second[order]
        types = [types[i] for i in order]

        z = np.zeros((n, 2))
        x = np.zeros((n, 2))
        for lam, (zt, xt) in enumerate(types):
            z[lam, zt] = 1.0
            x[lam, xt] = 1.0

        common = (first > tol) & (second > tol)
        if float(np.minimum(first, second)[common].sum()) > tol:
            break
        logger.debug("Rejected overlapping model draw with P* <= tol")

    return ModelDocument(
        lambda_count=n,
        preparations={PBR_FIRST: first, PBR_SECOND: second},
        responses={"Z": z, "X": x},
        bindings=single_system_assignment_labels(),
    )
