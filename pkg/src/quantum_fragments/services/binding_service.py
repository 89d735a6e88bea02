"""Resolve binding names from model files into states and measurement bases."""

import logging
import re

from quantum_fragments.exceptions import UnknownLabelError
from quantum_fragments.models.hilbert import MeasurementBasis, StateVector
from quantum_fragments.models.ontology import ModelDocument, QuantumAssignment
from quantum_fragments.services import hilbert_service
from quantum_fragments.services.hardy_service import hardy_state

logger = logging.getLogger(__name__)

_HARDY_NAME = re.compile(r"^hardy:(\d+):(\d+)$")


def resolve_state(name: str) -> StateVector:
    """'|0>', '|1>', '|+>', '|->', '|+i>', '|-i>' or 'hardy:M:j'."""
    match = _HARDY_NAME.match(name)
    if match:
        return hardy_state(int(match.group(1)), int(match.group(2)))
    return hilbert_service.ket(name)


def resolve_basis(name: str) -> MeasurementBasis:
    return hilbert_service.basis_containing(resolve_state(name))


def assignment_from_document(document: ModelDocument) -> QuantumAssignment:
    """Bind preparation labels to states and measurement labels to bases."""
    states = {}
    bases = {}
    for label, name in document.bindings.items():
        if label in document.preparations:
            states[label] = resolve_state(name)
        elif label in document.responses:
            bases[label] = resolve_basis(name)
        else:
            raise UnknownLabelError(f"Binding '{label}' names no preparation or measurement")
    logger.debug(f"Resolved {len(states)} states and {len(bases)} bases from bindings")
    return QuantumAssignment(states=states, bases=bases)
