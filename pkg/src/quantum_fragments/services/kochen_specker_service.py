"""The Kochen-Specker sphere model of a qubit: density, response, quadrature and sampling."""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from quantum_fragments.constants import DEFAULT_RESOLUTION
from quantum_fragments.exceptions import DimensionMismatchError
from quantum_fragments.models.hilbert import BlochVector, UnitVector
from quantum_fragments.models.ontology import (
    ConvergencePoint,
    ConvergenceStudy,
    FiniteOntologicalModel,
    QuantumAssignment,
    SpherePoint,
)
from quantum_fragments.services import hilbert_service, toy_service
from quantum_fragments.utils.sphere import check_resolution, frame, sphere_grid

logger = logging.getLogger(__name__)

Resolution = Tuple[int, int]


def _density(points: np.ndarray, psi: np.ndarray) -> np.ndarray:
    return np.maximum(points @ psi, 0.0) / math.pi


def _response(points: np.ndarray, phi: np.ndarray) -> np.ndarray:
    # Theta(0) = 1
    return (points @ phi >= 0.0).astype(float)


def ks_density(lam: UnitVector, psi: BlochVector) -> float:
    """p(lambda|Psi) = (1/pi) Theta(lambda.Psi) lambda.Psi."""
    return float(_density(lam.array, psi.array))


def ks_response(phi: BlochVector, lam: UnitVector) -> int:
    """p(Phi|lambda) = Theta(lambda.Phi)."""
    return int(_response(lam.array, phi.array))


def ks_predicted(
    phi: BlochVector, psi: BlochVector, resolution: Resolution = DEFAULT_RESOLUTION
) -> float:
    """Probability of the |Phi> outcome on |Psi> by quadrature over the sphere."""
    grid = sphere_grid(*resolution)
    integrand = _response(grid.points, phi.array) * _density(grid.points, psi.array)
    return float(grid.weights @ integrand)


def ks_total_mass(psi: BlochVector, resolution: Resolution = DEFAULT_RESOLUTION) -> float:
    grid = sphere_grid(*resolution)
    return float(grid.weights @ _density(grid.points, psi.array))


def ks_overlap(
    psi1: BlochVector, psi2: BlochVector, resolution: Resolution = DEFAULT_RESOLUTION
) -> float:
    """Integral of min(p(lambda|Psi1), p(lambda|Psi2)) over the sphere."""
    grid = sphere_grid(*resolution)
    minima = np.minimum(_density(grid.points, psi1.array), _density(grid.points, psi2.array))
    return float(grid.weights @ minima)


def analytic_ks_overlap(psi1: BlochVector, psi2: BlochVector) -> float:
    """Closed form 1 - sin(alpha/2), alpha the angle between the Bloch vectors."""
    alpha = math.acos(max(-1.0, min(1.0, psi1.dot(psi2))))
    return 1.0 - math.sin(alpha / 2)


def sample_ks_batch(psi: BlochVector, rng: np.random.Generator, size: int) -> np.ndarray:
    """Draw size ontic states from p(lambda|Psi) as an (size, 3) array.

    cos(theta) about Psi is the square root of a uniform variate, which gives the
    density 2 cos(theta) sin(theta) on the hemisphere; the azimuth is uniform.
    """
    u = np.sqrt(rng.random(size))
    azimuth = rng.uniform(0.0, 2 * math.pi, size)
    s = np.sqrt(np.clip(1.0 - u**2, 0.0, None))
    local = np.stack([s * np.cos(azimuth), s * np.sin(azimuth), u], axis=-1)
    return local @ frame(psi.array).T


def sample_ks(psi: BlochVector, rng: np.random.Generator) -> SpherePoint:
    point = sample_ks_batch(psi, rng, 1)[0]
    return SpherePoint.from_array(point, normalize=True)


def discretize_ks(
    resolution: Resolution, qa: Optional[QuantumAssignment] = None
) -> FiniteOntologicalModel:
    """Finite model on the quadrature grid for the qubit states and bases of qa.

    Without qa the model covers the six Pauli eigenstates and the three Pauli bases.
    """
    check_resolution(resolution)
    if qa is None:
        qa = toy_service.toy_quantum_assignment()
    grid = sphere_grid(*resolution)
    preparations = {}
    for label, state in qa.states.items():
        if state.dim != 2:
            raise DimensionMismatchError(
                f"The sphere model is for qubits; '{label}' has dim {state.dim}"
            )
        mass = grid.weights * _density(grid.points, hilbert_service.to_bloch(state).array)
        preparations[label] = mass / mass.sum()
    responses = {}
    for label, basis in qa.bases.items():
        if basis.dim != 2:
            raise DimensionMismatchError(
                f"The sphere model is for qubits; '{label}' has dim {basis.dim}"
            )
        first = _response(grid.points, hilbert_service.to_bloch(basis.vectors[0]).array)
        responses[label] = np.column_stack([first, 1.0 - first])
    logger.info(f"Discretized sphere model with N = {grid.points.shape[0]}")
    return FiniteOntologicalModel(
        lambda_count=grid.points.shape[0], preparations=preparations, responses=responses
    )


def random_bloch(rng: np.random.Generator) -> BlochVector:
    return hilbert_service.to_bloch(hilbert_service.random_state(rng))


def max_born_error(
    pairs: Sequence[Tuple[BlochVector, BlochVector]], resolution: Resolution = DEFAULT_RESOLUTION
) -> float:
    """Largest |ks_predicted - (1 + Phi.Psi)/2| over (Phi, Psi) pairs."""
    errors = [
        abs(ks_predicted(phi, psi, resolution) - hilbert_service.born_bloch(phi, psi))
        for phi, psi in pairs
    ]
    return max(errors) if errors else 0.0


def random_pairs(rng: np.random.Generator, count: int) -> List[Tuple[BlochVector, BlochVector]]:
    return [(random_bloch(rng), random_bloch(rng)) for _ in range(count)]


def ks_convergence(
    pairs: int, resolutions: Sequence[Resolution], rng: np.random.Generator
) -> ConvergenceStudy:
    """Born-rule error of the quadrature at each resolution on one set of random pairs."""
    sample = random_pairs(rng, pairs)
    points = []
    for resolution in resolutions:
        error = max_born_error(sample, resolution)
        logger.debug(f"Resolution {resolution[0]}x{resolution[1]}: max error {error:.3e}")
        points.append(ConvergencePoint(resolution=resolution, max_error=error))
    return ConvergenceStudy(pairs=pairs, points=points)
