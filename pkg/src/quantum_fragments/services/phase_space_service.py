"""Gaussian Liouville mechanics with a resolution restriction.

Phase-space coordinates are ordered z = (x1, p1, x2, p2, ...) with hbar = 1. A
covariance matrix gamma is admissible at scale lam when gamma + i*lam*Sigma is
positive semidefinite; linear Hamiltonian flow acts as mean -> A^T mean and
gamma -> A^T gamma A for a symplectic A.
"""

import logging
import math
from typing import List, Sequence, Union

import numpy as np
from scipy import linalg
from scipy.stats import multivariate_normal

from quantum_fragments.constants import DEFAULT_RR_SCALE, TOL_ALG, TOL_PSD
from quantum_fragments.exceptions import (
    DimensionMismatchError,
    InvalidOperatorError,
    InvalidParameterError,
    InvalidStateError,
)
from quantum_fragments.models.phase_space import (
    GaussianMacrostate,
    NoCloningReport,
    QuadratureMarginal,
    RRCheck,
    SymplecticMatrix,
    psd_tolerance,
    symplectic_form,
)

logger = logging.getLogger(__name__)

_QUADRATURES = {"x": 0, "p": 1}

Symplectic = Union[SymplecticMatrix, np.ndarray]


def _check_scale(lam: float) -> None:
    if lam < 0:
        raise InvalidParameterError(f"Resolution scale must be nonnegative, got {lam}")


def _covariance(gamma: Union[GaussianMacrostate, np.ndarray]) -> np.ndarray:
    if isinstance(gamma, GaussianMacrostate):
        return gamma.cov
    matrix = np.asarray(gamma, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
        raise DimensionMismatchError(f"Covariance must be 2N x 2N, got {matrix.shape}")
    scale = max(1.0, float(np.abs(matrix).max()))
    if not np.allclose(matrix, matrix.T, rtol=0, atol=TOL_ALG * scale):
        raise InvalidStateError("Covariance matrix is not symmetric")
    return matrix


def rr_satisfied(
    gamma: Union[GaussianMacrostate, np.ndarray], lam: float = DEFAULT_RR_SCALE
) -> RRCheck:
    """Check gamma + i*lam*Sigma >= 0 within psd_tolerance(gamma).

    The margin is the smallest eigenvalue of gamma + i*lam*Sigma.
    """
    _check_scale(lam)
    cov = _covariance(gamma)
    sigma = symplectic_form(cov.shape[0] // 2)
    margin = float(linalg.eigvalsh(cov + 1j * lam * sigma)[0])
    return RRCheck(satisfied=margin >= -psd_tolerance(cov), margin=margin)


def uncertainty_product(gamma: Union[GaussianMacrostate, np.ndarray]) -> np.ndarray:
    """Delta x * Delta p for each mode."""
    cov = _covariance(gamma)
    diagonal = np.clip(np.diag(cov), 0.0, None)
    return np.sqrt(diagonal[0::2] * diagonal[1::2])


def symplectic_eigenvalues(gamma: Union[GaussianMacrostate, np.ndarray]) -> np.ndarray:
    """Williamson spectrum nu_1 <= ... <= nu_N of gamma.

    The +-nu are the eigenvalues of the Hermitian gamma^(1/2) (i Sigma) gamma^(1/2),
    which is similar to i Sigma gamma.
    """
    cov = _covariance(gamma)
    n_modes = cov.shape[0] // 2
    weights, vectors = linalg.eigh(cov)
    root = (vectors * np.sqrt(np.clip(weights, 0.0, None))) @ vectors.T
    spectrum = linalg.eigvalsh(root @ (1j * symplectic_form(n_modes)) @ root)
    return np.clip(spectrum[n_modes:], 0.0, None)


def symplectic_margin(
    gamma: Union[GaussianMacrostate, np.ndarray], lam: float = DEFAULT_RR_SCALE
) -> float:
    """min nu - lam, unchanged by evolve; >= -psd_tolerance(gamma) iff the restriction holds."""
    _check_scale(lam)
    return float(symplectic_eigenvalues(gamma)[0] - lam)


def is_symplectic(matrix: np.ndarray) -> bool:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
        return False
    sigma = symplectic_form(matrix.shape[0] // 2)
    scale = max(1.0, float(np.abs(matrix).max()) ** 2)
    return bool(np.abs(matrix.T @ sigma @ matrix - sigma).max() <= TOL_ALG * scale)


def as_symplectic(matrix: Symplectic) -> SymplecticMatrix:
    if isinstance(matrix, SymplecticMatrix):
        return matrix
    if not is_symplectic(matrix):
        raise InvalidOperatorError("Matrix is not symplectic: A^T Sigma A != Sigma")
    return SymplecticMatrix(matrix=matrix)


def evolve(state: GaussianMacrostate, a: Symplectic) -> GaussianMacrostate:
    """Linear Hamiltonian flow: mean -> A^T mean, gamma -> A^T gamma A."""
    symplectic = as_symplectic(a)
    if symplectic.n_modes != state.n_modes:
        raise DimensionMismatchError(
            f"{symplectic.n_modes}-mode map applied to a {state.n_modes}-mode state"
        )
    matrix = symplectic.matrix
    cov = matrix.T @ state.cov @ matrix
    return GaussianMacrostate(mean=matrix.T @ state.mean, cov=(cov + cov.T) / 2)


def embed(local: np.ndarray, n_modes: int, mode: int) -> SymplecticMatrix:
    """Single-mode 2x2 map acting on one mode of an n_modes system."""
    if not 0 <= mode < n_modes:
        raise InvalidParameterError(f"Mode {mode} outside 0..{n_modes - 1}")
    matrix = np.eye(2 * n_modes)
    matrix[2 * mode : 2 * mode + 2, 2 * mode : 2 * mode + 2] = local
    return as_symplectic(matrix)


def rotation(angle: float, n_modes: int = 1, mode: int = 0) -> SymplecticMatrix:
    """Phase-space rotation of one mode (harmonic-oscillator flow)."""
    c, s = math.cos(angle), math.sin(angle)
    return embed(np.array([[c, s], [-s, c]]), n_modes, mode)


def squeezer(s: float, n_modes: int = 1, mode: int = 0) -> SymplecticMatrix:
    """diag(s, 1/s) on one mode."""
    if s <= 0:
        raise InvalidParameterError(f"Squeezing factor must be positive, got {s}")
    return embed(np.diag([s, 1.0 / s]), n_modes, mode)


def beamsplitter_mixer(
    angle: float, n_modes: int = 2, first: int = 0, second: int = 1
) -> SymplecticMatrix:
    """Mix two modes, rotating (x_first, x_second) and (p_first, p_second) alike."""
    if first == second or not (0 <= first < n_modes and 0 <= second < n_modes):
        raise InvalidParameterError(f"Invalid mode pair ({first}, {second}) for {n_modes} modes")
    c, s = math.cos(angle), math.sin(angle)
    matrix = np.eye(2 * n_modes)
    for offset in (0, 1):
        i, j = 2 * first + offset, 2 * second + offset
        matrix[i, i], matrix[i, j] = c, s
        matrix[j, i], matrix[j, j] = -s, c
    return as_symplectic(matrix)


def compose(*maps: SymplecticMatrix) -> SymplecticMatrix:
    """Map equivalent to evolving with maps[0], then maps[1], and so on."""
    if not maps:
        raise InvalidParameterError("compose needs at least one map")
    result = maps[0]
    for other in maps[1:]:
        result = result @ other
    return result


def random_symplectic(
    rng: np.random.Generator, n_modes: int = 1, depth: int = 4
) -> SymplecticMatrix:
    """Random product of rotations, moderate squeezers and beamsplitters."""
    maps: List[SymplecticMatrix] = []
    for _ in range(depth):
        for mode in range(n_modes):
            maps.append(rotation(float(rng.uniform(0, 2 * math.pi)), n_modes, mode))
            maps.append(squeezer(float(np.exp(rng.uniform(-0.7, 0.7))), n_modes, mode))
        for first in range(n_modes - 1):
            angle = float(rng.uniform(0, 2 * math.pi))
            maps.append(beamsplitter_mixer(angle, n_modes, first, first + 1))
    return compose(*maps)


def displace(state: GaussianMacrostate, shift: Sequence[float]) -> GaussianMacrostate:
    delta = np.asarray(shift, dtype=float)
    if delta.shape != state.mean.shape:
        raise DimensionMismatchError(f"Shift of shape {delta.shape} for mean {state.mean.shape}")
    return GaussianMacrostate(mean=state.mean + delta, cov=state.cov)


def fidelity(f: GaussianMacrostate, g: GaussianMacrostate) -> float:
    """Bhattacharyya overlap of two Gaussian densities, integral of sqrt(f) sqrt(g)."""
    if f.n_modes != g.n_modes:
        raise DimensionMismatchError(f"Cannot compare {f.n_modes}-mode and {g.n_modes}-mode states")
    average = (f.cov + g.cov) / 2
    sign_avg, logdet_avg = np.linalg.slogdet(average)
    if sign_avg <= 0 or not np.isfinite(logdet_avg):
        raise InvalidStateError("Average covariance (gamma_f + gamma_g)/2 is singular")
    sign_f, logdet_f = np.linalg.slogdet(f.cov)
    sign_g, logdet_g = np.linalg.slogdet(g.cov)
    if sign_f <= 0 or sign_g <= 0:
        return 0.0
    delta = f.mean - g.mean
    distance = float(delta @ linalg.solve(average, delta, assume_a="pos"))
    log_f = -distance / 8 + (logdet_f + logdet_g) / 4 - logdet_avg / 2
    return float(min(1.0, math.exp(log_f)))


def no_cloning_witness(f: GaussianMacrostate, g: GaussianMacrostate) -> NoCloningReport:
    """A cloner would need F = F^2 under fidelity-preserving flow; that fails when 0 < F < 1."""
    value = fidelity(f, g)
    return NoCloningReport(
        fidelity=value,
        fidelity_squared=value**2,
        cloning_impossible=TOL_ALG < value < 1.0 - TOL_ALG,
    )


def tensor_product(f: GaussianMacrostate, g: GaussianMacrostate) -> GaussianMacrostate:
    """Independent systems: concatenated means, block-diagonal covariance."""
    return GaussianMacrostate(
        mean=np.concatenate([f.mean, g.mean]), cov=linalg.block_diag(f.cov, g.cov)
    )


def reduced(state: GaussianMacrostate, particle: int) -> GaussianMacrostate:
    """Marginal of one mode (particles numbered from 1)."""
    if not 1 <= particle <= state.n_modes:
        raise InvalidParameterError(f"Particle {particle} outside 1..{state.n_modes}")
    idx = slice(2 * (particle - 1), 2 * particle)
    return GaussianMacrostate(mean=state.mean[idx], cov=state.cov[idx, idx])


def condition_on_quadrature(
    state: GaussianMacrostate, particle: int, quadrature: str, value: float
) -> GaussianMacrostate:
    """Condition on an observed x or p of one particle; the other modes remain.

    The conjugate quadrature of the observed particle is marginalised out.
    """
    if state.n_modes < 2:
        raise DimensionMismatchError("Conditioning needs at least two modes")
    if not 1 <= particle <= state.n_modes:
        raise InvalidParameterError(f"Particle {particle} outside 1..{state.n_modes}")
    if quadrature not in _QUADRATURES:
        raise InvalidParameterError(f"Quadrature must be 'x' or 'p', got '{quadrature}'")
    i = 2 * (particle - 1) + _QUADRATURES[quadrature]
    rest = [k for k in range(2 * state.n_modes) if k // 2 != particle - 1]
    variance = float(state.cov[i, i])
    if variance <= TOL_PSD:
        raise InvalidStateError(f"Conditioning variance {variance:.3e} is degenerate")
    cross = state.cov[rest, i]
    mean = state.mean[rest] + cross * (value - state.mean[i]) / variance
    cov = state.cov[np.ix_(rest, rest)] - np.outer(cross, cross) / variance
    logger.debug(f"Conditioned {quadrature}{particle} = {value}: posterior variance {np.diag(cov)}")
    return GaussianMacrostate(mean=mean, cov=(cov + cov.T) / 2)


def condition_on_position(
    state: GaussianMacrostate, particle: int, observed_x: float
) -> GaussianMacrostate:
    return condition_on_quadrature(state, particle, "x", observed_x)


def epr_state(c: float, s: float) -> GaussianMacrostate:
    """Two-mode Gaussian approaching delta(x1 - x2 + c) delta(p1 + p2) as s -> 0.

    The relative mode (x1 - x2)/sqrt2 is squeezed to diag(s^2/2, 1/(2 s^2)) and the
    centre-of-mass mode (x1 + x2)/sqrt2 to diag(1/(2 s^2), s^2/2), so
    Var(x1 - x2) = Var(p1 + p2) = s^2 and both modes saturate the restriction at 1/2.
    """
    if s <= 0:
        raise InvalidParameterError(f"Squeezing width must be positive, got {s}")
    squeezed = np.diag([s**2 / 2, 1 / (2 * s**2), 1 / (2 * s**2), s**2 / 2])
    r = 1 / math.sqrt(2)
    # z = B (u_x, u_p, v_x, v_p) with u relative and v centre-of-mass coordinates
    basis = np.array(
        [
            [r, 0, r, 0],
            [0, r, 0, r],
            [-r, 0, r, 0],
            [0, -r, 0, r],
        ]
    )
    cov = basis @ squeezed @ basis.T
    return GaussianMacrostate(mean=[0.0, 0.0, c, 0.0], cov=(cov + cov.T) / 2)


def density(state: GaussianMacrostate, z: Sequence[float]) -> float:
    """Gaussian pdf at z; the Wigner function when the state is RR-valid at hbar/2."""
    point = np.asarray(z, dtype=float)
    if point.shape != state.mean.shape:
        raise DimensionMismatchError(f"Point of shape {point.shape} for mean {state.mean.shape}")
    if float(linalg.eigvalsh(state.cov)[0]) <= TOL_PSD:
        raise InvalidStateError("Pointwise density needs a nonsingular covariance")
    return float(multivariate_normal(mean=state.mean, cov=state.cov).pdf(point))


def marginals(state: GaussianMacrostate) -> List[QuadratureMarginal]:
    """Mean and variance of every coordinate; x-marginals play the role of |psi(x)|^2."""
    names = [f"{q}{k + 1}" for k in range(state.n_modes) for q in ("x", "p")]
    return [
        QuadratureMarginal(
            coordinate=name, mean=float(state.mean[i]), variance=float(state.cov[i, i])
        )
        for i, name in enumerate(names)
    ]


def entropy(state: GaussianMacrostate) -> float:
    """Differential entropy of the maximum-entropy distribution with covariance gamma."""
    sign, logdet = np.linalg.slogdet(state.cov)
    if sign <= 0:
        raise InvalidStateError("Entropy needs a nonsingular covariance")
    dim = 2 * state.n_modes
    return float(0.5 * (dim * math.log(2 * math.pi * math.e) + logdet))


def vacuum(n_modes: int = 1, lam: float = DEFAULT_RR_SCALE) -> GaussianMacrostate:
    _check_scale(lam)
    return GaussianMacrostate(mean=np.zeros(2 * n_modes), cov=lam * np.eye(2 * n_modes))


def coherent(x: float, p: float, lam: float = DEFAULT_RR_SCALE) -> GaussianMacrostate:
    _check_scale(lam)
    return GaussianMacrostate(mean=[x, p], cov=lam * np.eye(2))


def squeezed_vacuum(r: float, lam: float = DEFAULT_RR_SCALE) -> GaussianMacrostate:
    """Position variance lam e^{-2r}, momentum variance lam e^{2r}."""
    _check_scale(lam)
    return GaussianMacrostate(
        mean=[0.0, 0.0], cov=np.diag([lam * math.exp(-2 * r), lam * math.exp(2 * r)])
    )


def thermal(mean_occupation: float, lam: float = DEFAULT_RR_SCALE) -> GaussianMacrostate:
    if mean_occupation < 0:
        raise InvalidParameterError(f"Mean occupation must be nonnegative, got {mean_occupation}")
    _check_scale(lam)
    return GaussianMacrostate(mean=[0.0, 0.0], cov=lam * (2 * mean_occupation + 1) * np.eye(2))


def random_rr_valid(
    rng: np.random.Generator, n_modes: int = 1, lam: float = DEFAULT_RR_SCALE
) -> GaussianMacrostate:
    """A^T D A with thermal factors D >= lam per mode and a random symplectic A."""
    _check_scale(lam)
    factors = 1.0 + rng.exponential(0.5, size=n_modes)
    thermal_cov = np.diag(np.repeat(lam * factors, 2))
    a = random_symplectic(rng, n_modes).matrix
    cov = a.T @ thermal_cov @ a
    mean = rng.normal(size=2 * n_modes)
    return GaussianMacrostate(mean=mean, cov=(cov + cov.T) / 2)
