"""Quantum core: Born rule, collapse, unitary dynamics, tensor products and qubits."""

import logging
import math
from itertools import product
from typing import Dict, List, Sequence, Tuple, TypeVar, Union, overload

import numpy as np

from quantum_fragments.constants import TOL_ALG
from quantum_fragments.exceptions import (
    DimensionMismatchError,
    ForbiddenOutcomeError,
    InvalidOperatorError,
    InvalidParameterError,
    UnknownLabelError,
)
from quantum_fragments.models.hilbert import BlochVector, MeasurementBasis, Operator, StateVector

logger = logging.getLogger(__name__)

_SQRT2_INV = 1 / math.sqrt(2)

_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}

_KETS = {
    "|0>": (1, 0),
    "|1>": (0, 1),
    "|+>": (_SQRT2_INV, _SQRT2_INV),
    "|->": (_SQRT2_INV, -_SQRT2_INV),
    "|+i>": (_SQRT2_INV, 1j * _SQRT2_INV),
    "|-i>": (_SQRT2_INV, -1j * _SQRT2_INV),
}

# Pauli axis -> (+1 eigenstate, -1 eigenstate)
_EIGENSTATES = {1: ("|+>", "|->"), 2: ("|+i>", "|-i>"), 3: ("|0>", "|1>")}

T = TypeVar("T", StateVector, Operator)


def ket(name: str) -> StateVector:
    """Named qubit state: |0>, |1>, |+>, |->, |+i> or |-i>."""
    if name not in _KETS:
        raise UnknownLabelError(f"Unknown state '{name}'. Available: {', '.join(_KETS)}")
    return StateVector(amplitudes=_KETS[name])


def pauli(axis: int) -> Operator:
    """Pauli operator sigma_axis for axis 1, 2 or 3."""
    if axis not in _PAULI:
        raise InvalidParameterError(f"Invalid Pauli axis {axis!r}; expected 1, 2 or 3")
    return Operator(entries=_PAULI[axis])


def pauli_eigenbasis(axis: int) -> MeasurementBasis:
    """Eigenbasis of sigma_axis ordered (+1, -1)."""
    if axis not in _EIGENSTATES:
        raise InvalidParameterError(f"Invalid Pauli axis {axis!r}; expected 1, 2 or 3")
    plus, minus = _EIGENSTATES[axis]
    return MeasurementBasis(vectors=(ket(plus), ket(minus)))


def computational_basis(dim: int) -> MeasurementBasis:
    return MeasurementBasis.from_columns(np.eye(dim, dtype=complex))


def identity(dim: int) -> Operator:
    return Operator(entries=np.eye(dim, dtype=complex))


def beamsplitter() -> Operator:
    """50/50 beamsplitter (1/sqrt2)[[1, 1], [1, -1]]."""
    return Operator(entries=_SQRT2_INV * np.array([[1, 1], [1, -1]], dtype=complex))


def phase_gate(angle: float) -> Operator:
    return Operator(entries=np.diag([1, np.exp(1j * angle)]))


def singlet() -> StateVector:
    """(|0>|1> - |1>|0>)/sqrt2."""
    zero, one = ket("|0>"), ket("|1>")
    amplitudes = tensor(zero, one).amplitudes - tensor(one, zero).amplitudes
    return StateVector(amplitudes=amplitudes * _SQRT2_INV)


def inner(bra: StateVector, ket_: StateVector) -> complex:
    """<bra|ket>."""
    _check_dims(bra.dim, ket_.dim)
    return complex(np.vdot(bra.amplitudes, ket_.amplitudes))


def states_equal(
    a: StateVector, b: StateVector, phase_insensitive: bool = True, tol: float = TOL_ALG
) -> bool:
    """Compare states; by default up to a global phase.

    Maximizing over the phase analytically reduces the comparison to |<a|b>| = 1.
    """
    if a.dim != b.dim:
        return False
    if phase_insensitive:
        return abs(abs(inner(a, b)) - 1.0) <= tol
    return bool(np.allclose(a.amplitudes, b.amplitudes, rtol=0, atol=tol))


def born_probabilities(state: StateVector, basis: MeasurementBasis) -> np.ndarray:
    """Outcome probabilities |<Phi_j|Psi>|^2 for each basis vector."""
    _check_dims(state.dim, basis.dim)
    amplitudes = basis.matrix.conj().T @ state.amplitudes
    probabilities = np.abs(amplitudes) ** 2
    probabilities.setflags(write=False)
    return probabilities


def collapse(state: StateVector, basis: MeasurementBasis, outcome: int) -> StateVector:
    """Post-measurement state: the basis vector of the obtained outcome."""
    probabilities = born_probabilities(state, basis)
    if not 0 <= outcome < len(basis):
        raise InvalidParameterError(f"Outcome {outcome} outside 0..{len(basis) - 1}")
    if probabilities[outcome] <= TOL_ALG:
        raise ForbiddenOutcomeError(
            f"Outcome {outcome} has probability {probabilities[outcome]:.3e}; cannot collapse"
        )
    return basis.vectors[outcome]


def apply_unitary(unitary: Operator, state: StateVector) -> StateVector:
    _check_dims(unitary.dim, state.dim)
    if not unitary.is_unitary:
        raise InvalidOperatorError("Operator is not unitary")
    return StateVector(amplitudes=unitary.entries @ state.amplitudes)


@overload
def tensor(a: StateVector, b: StateVector) -> StateVector: ...


@overload
def tensor(a: Operator, b: Operator) -> Operator: ...


def tensor(
    a: Union[StateVector, Operator], b: Union[StateVector, Operator]
) -> Union[StateVector, Operator]:
    """Kronecker product of two states or two operators."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(amplitudes=np.kron(a.amplitudes, b.amplitudes))
    if isinstance(a, Operator) and isinstance(b, Operator):
        return Operator(entries=np.kron(a.entries, b.entries))
    raise TypeError(f"Cannot tensor {type(a).__name__} with {type(b).__name__}")


def tensor_all(items: Sequence[T]) -> T:
    result = items[0]
    for item in items[1:]:
        result = tensor(result, item)  # type: ignore[assignment]
    return result


def commutator(a: Operator, b: Operator) -> Operator:
    _check_dims(a.dim, b.dim)
    return Operator(entries=a.entries @ b.entries - b.entries @ a.entries)


def expectation(op: Operator, state: StateVector) -> complex:
    _check_dims(op.dim, state.dim)
    return complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))


def observable_eigenbasis(op: Operator) -> Tuple[np.ndarray, MeasurementBasis]:
    """Eigenvalues (descending) and eigenbasis of a selfadjoint operator."""
    if not op.is_selfadjoint:
        raise InvalidOperatorError("Observable is not selfadjoint")
    eigenvalues, eigenvectors = np.linalg.eigh(op.entries)
    order = np.argsort(eigenvalues)[::-1]
    return eigenvalues[order], MeasurementBasis.from_columns(eigenvectors[:, order])


def to_bloch(state: StateVector) -> BlochVector:
    """Bloch vector (<sigma_1>, <sigma_2>, <sigma_3>)."""
    if state.dim != 2:
        raise DimensionMismatchError(f"Bloch vectors need a qubit, got dim {state.dim}")
    components = [expectation(pauli(axis), state).real for axis in (1, 2, 3)]
    return BlochVector.from_array(components, normalize=True)


def state_from_angles(theta: float, phi: float) -> StateVector:
    """cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    return StateVector(
        amplitudes=[math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)]
    )


def from_bloch(bloch: BlochVector) -> StateVector:
    """Qubit state with the given Bloch vector (phase fixed by a real |0> amplitude)."""
    theta = math.acos(max(-1.0, min(1.0, bloch.z)))
    phi = math.atan2(bloch.y, bloch.x)
    return state_from_angles(theta, phi)


def born_bloch(phi: BlochVector, psi: BlochVector) -> float:
    """Probability (1 + Phi.Psi)/2 of the |Phi> outcome on |Psi>."""
    return min(1.0, max(0.0, (1.0 + phi.dot(psi)) / 2))


def mach_zehnder(second_beamsplitter: bool) -> np.ndarray:
    """Detector distribution (D0, D1) for a photon entering from the left."""
    bs = beamsplitter()
    state = apply_unitary(bs, ket("|0>"))
    if second_beamsplitter:
        state = apply_unitary(bs, state)
    return born_probabilities(state, computational_basis(2))


def cloning_contradiction(psi: StateVector, phi: StateVector) -> bool:
    """True when a unitary cloner of psi and phi would need |<Phi|Psi>| = |<Phi|Psi>|^2.

    That identity fails exactly when the states are neither orthogonal nor identical.
    """
    overlap = abs(inner(phi, psi))
    return TOL_ALG < overlap < 1.0 - TOL_ALG


def sequence_probabilities(
    state: StateVector, bases: Sequence[MeasurementBasis]
) -> Dict[Tuple[int, ...], float]:
    """Distribution over outcome sequences with collapse after every measurement."""
    result: Dict[Tuple[int, ...], float] = {}
    for outcomes in product(*(range(len(b)) for b in bases)):
        current = state
        weight = 1.0
        for basis, outcome in zip(bases, outcomes):
            p = float(born_probabilities(current, basis)[outcome])
            weight *= p
            if weight <= TOL_ALG:
                weight = 0.0
                break
            current = basis.vectors[outcome]
        result[outcomes] = weight
    return result


def random_state(rng: np.random.Generator, dim: int = 2) -> StateVector:
    """Haar-random pure state."""
    values = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector.normalized(values)


def random_qubit_unitary(rng: np.random.Generator, depth: int = 6) -> Operator:
    """Random product of Paulis, beamsplitters and phase gates."""
    generators: List[Operator] = [pauli(1), pauli(2), pauli(3), beamsplitter()]
    result = identity(2)
    for _ in range(depth):
        gate = generators[int(rng.integers(len(generators)))]
        result = phase_gate(float(rng.uniform(0, 2 * math.pi))) @ gate @ result
    return result


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatchError(f"Dimension mismatch: {a} != {b}")


def complement(state: StateVector) -> StateVector:
    """The qubit state orthogonal to state, (-conj(beta), conj(alpha))."""
    if state.dim != 2:
        raise DimensionMismatchError(
            f"Orthogonal complement is defined for qubits, got dim {state.dim}"
        )
    alpha, beta = state.amplitudes
    return StateVector(amplitudes=[-np.conj(beta), np.conj(alpha)])


def basis_containing(state: StateVector) -> MeasurementBasis:
    """Qubit basis {state, its complement}; outcome 0 is state."""
    return MeasurementBasis(vectors=(state, complement(state)))
