import pytest

from quantum_fragments.exceptions import InvalidParameterError, UnknownLabelError
from quantum_fragments.models.ontology import ModelDocument
from quantum_fragments.services import binding_service, hardy_service, hilbert_service


def test_named_kets():
    resolved = binding_service.resolve_state("|-i>")
    assert hilbert_service.states_equal(resolved, hilbert_service.ket("|-i>"))


def test_hardy_names():
    state = binding_service.resolve_state("hardy:4:1")
    assert hilbert_service.states_equal(state, hardy_service.hardy_state(4, 1))


def test_hardy_index_checked():
    with pytest.raises(InvalidParameterError):
        binding_service.resolve_state("hardy:4:4")


def test_unknown_name():
    with pytest.raises(UnknownLabelError):
        binding_service.resolve_state("|2>")


def test_basis_leads_with_named_state():
    basis = binding_service.resolve_basis("|+>")
    assert hilbert_service.states_equal(basis.vectors[0], hilbert_service.ket("|+>"))


def test_assignment_from_document():
    document = ModelDocument(
        lambda_count=1,
        preparations={"p": [1.0]},
        responses={"Z": [[1.0, 0.0]]},
        bindings={"p": "|0>", "Z": "|0>"},
    )
    qa = binding_service.assignment_from_document(document)
    assert list(qa.states) == ["p"]
    assert list(qa.bases) == ["Z"]


def test_binding_to_unknown_label():
    document = ModelDocument(lambda_count=1, preparations={"p": [1.0]}, bindings={"q": "|0>"})
    with pytest.raises(UnknownLabelError, match="Binding 'q'"):
        binding_service.assignment_from_document(document)
