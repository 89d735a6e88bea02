"""Tests for preparation independence and overlapping preparations."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantum_fragments.constants import PBR_FIRST, PBR_SECOND
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.ontology import FiniteOntologicalModel
from quantum_fragments.services import (
    binding_service,
    hilbert_service,
    ontology_service,
    pbr_service,
    toy_service,
)


def test_each_outcome_is_forbidden_by_its_preparation():
    basis = pbr_service.pbr_basis()
    for index, state in enumerate(pbr_service.pbr_preparations().values()):
        probabilities = hilbert_service.born_probabilities(state, basis)
        assert probabilities[index] == pytest.approx(0.0, abs=1e-12)


def test_labels_line_up():
    assert list(pbr_service.pbr_preparations()) == ["Psi11", "Psi12", "Psi21", "Psi22"]
    assert pbr_service.pbr_outcome_labels() == ["Phi11", "Phi12", "Phi21", "Phi22"]


def test_product_model_is_independent():
    single = FiniteOntologicalModel(
        lambda_count=2, preparations={PBR_FIRST: [0.25, 0.75], PBR_SECOND: [1.0, 0.0]}
    )
    joint = pbr_service.pbr_product_model(single)
    assert joint.lambda_count == 4
    assert np.allclose(joint.preparation("Psi12"), [0.25, 0.0, 0.75, 0.0])


def test_disjoint_preparations_are_consistent():
    single = FiniteOntologicalModel(
        lambda_count=2, preparations={PBR_FIRST: [1.0, 0.0], PBR_SECOND: [0.0, 1.0]}
    )
    report = pbr_service.pbr_contradiction(single)
    assert report.p_star == 0.0
    assert not report.inconsistent


def test_toy_embedding_is_inconsistent():
    single = pbr_service.relabel_for_pbr(toy_service.toy_ontological_model(), "a", "b")
    report = pbr_service.pbr_contradiction(single)
    assert report.inconsistent
    assert report.p_star == pytest.approx(0.5)
    assert report.deficit >= report.bound - 1e-9
    assert all(row.born_probability == pytest.approx(0.0, abs=1e-12) for row in report.outcomes)


@pytest.mark.slow
def test_hundred_random_overlapping_models():
    rng = np.random.default_rng(31)
    for _ in range(100):
        document = pbr_service.random_overlapping_model(rng)
        qa = binding_service.assignment_from_document(document)
        assert ontology_service.reproduces_quantum(document, qa, 1e-9).passed
        report = pbr_service.pbr_contradiction(document)
        assert report.inconsistent
        assert report.deficit >= report.p_star**2 - 1e-9


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_random_overlapping_models(seed):
    document = pbr_service.random_overlapping_model(np.random.default_rng(seed))
    report = pbr_service.pbr_contradiction(document)
    assert report.deficit >= report.p_star**2 - 1e-9


class TestMoseley:
    def test_plus_and_zero_need_two_copies(self):
        zero, plus = hilbert_service.ket("|0>"), hilbert_service.ket("|+>")
        overlap_sq = abs(hilbert_service.inner(zero, plus)) ** 2
        result = pbr_service.moseley_copies(overlap_sq)
        assert result.copies == 2
        assert result.n_copy_overlap_sq == pytest.approx(0.25)
        assert not result.mapping_constructed

    @pytest.mark.parametrize("overlap_sq, copies", [(0.4, 1), (0.9, 7), (0.99, 69)])
    def test_smallest_copy_count(self, overlap_sq, copies):
        result = pbr_service.moseley_copies(overlap_sq)
        assert result.copies == copies
        assert overlap_sq**copies < 0.5 <= overlap_sq ** (copies - 1)

    @pytest.mark.parametrize("overlap_sq", [0.0, 1.0, -0.1])
    def test_out_of_range(self, overlap_sq):
        with pytest.raises(InvalidParameterError):
            pbr_service.moseley_copies(overlap_sq)

    @pytest.mark.parametrize("overlap_sq, copies", [(0.5 - 1e-13, 1), (0.5 - 1e-10, 1), (0.5, 2)])
    def test_strictly_below_half(self, overlap_sq, copies):
        assert pbr_service.moseley_copies(overlap_sq).copies == copies

    def test_rounded_half_counts_as_half(self):
        assert pbr_service.moseley_copies(0.4999999999999999).copies == 2
