"""Toy theory: macrostates, disturbing measurements, permutations and the qubit table."""

import logging
from fractions import Fraction
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from quantum_fragments.exceptions import InvalidParameterError, UnknownLabelError
from quantum_fragments.models.hilbert import MeasurementBasis
from quantum_fragments.models.ontology import FiniteOntologicalModel, QuantumAssignment
from quantum_fragments.models.toy import (
    CELLS,
    HALF,
    CorrespondenceRow,
    ToyMacrostate,
    ToyMeasurement,
    ToyMeasurementLabel,
    to_fraction,
)
from quantum_fragments.services import hilbert_service

logger = logging.getLogger(__name__)

_PARTITIONS = {
    ToyMeasurementLabel.A: ((0, 1), (2, 3)),
    ToyMeasurementLabel.B: ((0, 2), (1, 3)),
    ToyMeasurementLabel.C: ((0, 3), (1, 2)),
}

# Toy measurement -> Pauli axis: A <-> z, B <-> x, C <-> y
PAULI_AXIS = {
    ToyMeasurementLabel.A: 3,
    ToyMeasurementLabel.B: 1,
    ToyMeasurementLabel.C: 2,
}

# Extremal macrostate -> Pauli eigenstate carrying the same statistics
QUBIT_STATE = {
    "a": "|0>",
    "~a": "|1>",
    "b": "|+>",
    "~b": "|->",
    "c": "|+i>",
    "~c": "|-i>",
}

# Exchanges cells (0,1) and (1,0); maps a to b
SWAP_01_10 = (0, 2, 1, 3)

Outcome = Tuple[Fraction, Fraction]


def measurement(label: str) -> ToyMeasurement:
    try:
        key = ToyMeasurementLabel(label.upper())
    except ValueError:
        raise UnknownLabelError(f"Unknown toy measurement '{label}'. Available: A, B, C")
    return ToyMeasurement(label=key, partition=_PARTITIONS[key])


def all_measurements() -> List[ToyMeasurement]:
    return [measurement(label.value) for label in ToyMeasurementLabel]


def outcome_label(meas: ToyMeasurement, outcome: int) -> str:
    """a / ~a for measurement A, and likewise for B and C."""
    name = meas.label.value.lower()
    return name if outcome == 0 else f"~{name}"


def outcome_state(meas: ToyMeasurement, outcome: int) -> ToyMacrostate:
    """Extremal macrostate: 1/2 on each cell of the outcome."""
    p = [Fraction(0)] * len(CELLS)
    for cell in meas.partition[outcome]:
        p[cell] = HALF
    return ToyMacrostate(p=p, label=outcome_label(meas, outcome))


def extremal_macrostates() -> Dict[str, ToyMacrostate]:
    """The six minimal-uncertainty macrostates keyed a, b, c, ~a, ~b, ~c."""
    states = {}
    for outcome in (0, 1):
        for meas in all_measurements():
            state = outcome_state(meas, outcome)
            states[state.label or ""] = state
    return states


def macrostate(label: str) -> ToyMacrostate:
    """Extremal macrostate by label, or 'uniform' for total ignorance."""
    if label == "uniform":
        return ToyMacrostate(p=[Fraction(1, 4)] * 4, label="uniform")
    states = extremal_macrostates()
    if label not in states:
        raise UnknownLabelError(
            f"Unknown toy macrostate '{label}'. Available: {', '.join(states)}, uniform"
        )
    return states[label]


def label_of(p: Sequence[Fraction]) -> str:
    for label, state in extremal_macrostates().items():
        if tuple(state.p) == tuple(p):
            return label
    return ""


def measurement_statistics(m: ToyMacrostate, meas: ToyMeasurement) -> Outcome:
    """(p0, p1): probability mass on each outcome's cells."""
    p0 = sum((m.p[cell] for cell in meas.partition[0]), Fraction(0))
    p1 = sum((m.p[cell] for cell in meas.partition[1]), Fraction(0))
    return p0, p1


def measure(
    m: ToyMacrostate, meas: ToyMeasurement, rng: np.random.Generator
) -> Tuple[int, ToyMacrostate]:
    """Sample an outcome and return it with the disturbed macrostate."""
    p0, _ = measurement_statistics(m, meas)
    outcome = 0 if rng.random() < float(p0) else 1
    post = outcome_state(meas, outcome)
    logger.debug(f"Measured {meas.label.value} on {m.describe()}: {post.label}")
    return outcome, post


def measure_microstate(
    cell: int, meas: ToyMeasurement, rng: np.random.Generator
) -> Tuple[int, int]:
    """Reveal the outcome of a known cell, then leave it or swap it within its pair."""
    if not 0 <= cell < len(CELLS):
        raise InvalidParameterError(f"Cell index {cell} outside 0..{len(CELLS) - 1}")
    outcome = meas.outcome_of(cell)
    pair = meas.partition[outcome]
    if rng.random() < 0.5:
        return outcome, cell
    return outcome, pair[1] if cell == pair[0] else pair[0]


def permute(m: ToyMacrostate, perm: Sequence[int]) -> ToyMacrostate:
    """Reversible dynamics: the entry of cell i moves to cell perm[i]."""
    if sorted(perm) != list(range(len(CELLS))):
        raise InvalidParameterError(f"{tuple(perm)} is not a permutation of the four cells")
    p = [Fraction(0)] * len(CELLS)
    for i, target in enumerate(perm):
        p[target] = m.p[i]
    return ToyMacrostate(p=p, label=label_of(p) or None)


def overlap(m1: ToyMacrostate, m2: ToyMacrostate) -> Fraction:
    return sum((min(a, b) for a, b in zip(m1.p, m2.p)), Fraction(0))


def single_shot_distinguish_bound(m1: ToyMacrostate, m2: ToyMacrostate) -> Fraction:
    """Best equal-prior probability of naming the prepared macrostate from the cell."""
    return 1 - overlap(m1, m2) / 2


def sequence_statistics(
    m: ToyMacrostate, measurements: Sequence[ToyMeasurement]
) -> Dict[Tuple[int, ...], Fraction]:
    """Exact distribution over outcome sequences of consecutive measurements."""
    result: Dict[Tuple[int, ...], Fraction] = {}
    for outcomes in product((0, 1), repeat=len(measurements)):
        current = m
        weight = Fraction(1)
        for meas, outcome in zip(measurements, outcomes):
            weight *= measurement_statistics(current, meas)[outcome]
            if weight == 0:
                break
            current = outcome_state(meas, outcome)
        result[outcomes] = weight
    return result


def repeat_probability(m: ToyMacrostate, measurements: Sequence[ToyMeasurement]) -> Fraction:
    """P(last outcome == first outcome) over a sequence of measurements."""
    if len(measurements) < 2 or measurements[0].label != measurements[-1].label:
        raise InvalidParameterError("Sequence must start and end with the same measurement")
    stats = sequence_statistics(m, measurements)
    return sum((w for seq, w in stats.items() if seq[0] == seq[-1]), Fraction(0))


def qubit_correspondence_report() -> List[CorrespondenceRow]:
    """Toy statistics next to Born statistics for each macrostate and measurement."""
    rows = []
    for label, state in extremal_macrostates().items():
        qubit = hilbert_service.ket(QUBIT_STATE[label])
        for meas in all_measurements():
            axis = PAULI_AXIS[meas.label]
            born = hilbert_service.born_probabilities(qubit, hilbert_service.pauli_eigenbasis(axis))
            rows.append(
                CorrespondenceRow(
                    macrostate=label,
                    qubit_state=QUBIT_STATE[label],
                    measurement=meas.label,
                    pauli_axis=axis,
                    toy=measurement_statistics(state, meas),
                    quantum=(to_fraction(born[0]), to_fraction(born[1])),
                )
            )
    mismatches = [r for r in rows if not r.matches]
    if mismatches:
        logger.warning(f"{len(mismatches)} toy/qubit entries disagree")
    return rows


def toy_ontological_model() -> FiniteOntologicalModel:
    """The toy theory as a 4-point model: extremal macrostates and A, B, C responses."""
    preparations = {label: [float(v) for v in s.p] for label, s in extremal_macrostates().items()}
    responses = {}
    for meas in all_measurements():
        table = np.zeros((len(CELLS), 2))
        for cell in range(len(CELLS)):
            table[cell, meas.outcome_of(cell)] = 1.0
        responses[meas.label.value] = table
    return FiniteOntologicalModel(
        lambda_count=len(CELLS), preparations=preparations, responses=responses
    )


def toy_quantum_assignment() -> QuantumAssignment:
    """Binds the toy labels to the qubit states and Pauli bases of the correspondence."""
    bases: Dict[str, MeasurementBasis] = {
        label.value: hilbert_service.pauli_eigenbasis(axis) for label, axis in PAULI_AXIS.items()
    }
    states = {label: hilbert_service.ket(name) for label, name in QUBIT_STATE.items()}
    return QuantumAssignment(states=states, bases=bases)
