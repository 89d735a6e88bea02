"""Tests for state, operator, basis and Bloch vector models."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from quantum_fragments.models.hilbert import (
    BlochVector,
    MeasurementBasis,
    Operator,
    StateVector,
    UnitVector,
)


class TestStateVector:
    def test_normalized_state_accepted(self):
        state = StateVector(amplitudes=[1 / math.sqrt(2), 1j / math.sqrt(2)])
        assert state.dim == 2
        assert len(state) == 2

    def test_unnormalized_state_rejected(self):
        with pytest.raises(ValidationError, match="not normalized"):
            StateVector(amplitudes=[1.0, 1.0])

    def test_normalized_constructor(self):
        state = StateVector.normalized([3, 4j])
        assert np.allclose(state.amplitudes, [0.6, 0.8j])

    def test_zero_vector_cannot_be_normalized(self):
        with pytest.raises(ValueError, match="zero vector"):
            StateVector.normalized([0, 0])

    def test_amplitudes_are_read_only(self):
        state = StateVector(amplitudes=[1, 0])
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0

    def test_complex_pairs_round_trip(self):
        state = StateVector(amplitudes=[1 / math.sqrt(2), -1j / math.sqrt(2)])
        dumped = state.model_dump()
        assert dumped["amplitudes"][1] == pytest.approx([0.0, -1 / math.sqrt(2)])
        restored = StateVector.from_pairs(dumped["amplitudes"])
        assert np.allclose(restored.amplitudes, state.amplitudes)

    def test_dimension_limit(self):
        with pytest.raises(ValidationError):
            StateVector(amplitudes=np.ones(17) / math.sqrt(17))


class TestOperator:
    def test_non_square_rejected(self):
        with pytest.raises(ValidationError, match="square"):
            Operator(entries=[[1, 0, 0], [0, 1, 0]])

    def test_unitary_and_selfadjoint_flags(self):
        sigma1 = Operator(entries=[[0, 1], [1, 0]])
        assert sigma1.is_unitary
        assert sigma1.is_selfadjoint
        skew = Operator(entries=[[0, 1], [0, 0]])
        assert not skew.is_unitary
        assert not skew.is_selfadjoint

    def test_composition(self):
        sigma1 = Operator(entries=[[0, 1], [1, 0]])
        assert np.allclose((sigma1 @ sigma1).entries, np.eye(2))

    def test_composition_dimension_mismatch(self):
        with pytest.raises(ValueError, match="Cannot compose"):
            Operator(entries=np.eye(2)) @ Operator(entries=np.eye(4))


class TestMeasurementBasis:
    def test_computational_basis(self):
        basis = MeasurementBasis.from_columns(np.eye(2))
        assert basis.dim == 2
        assert len(basis) == 2
        assert np.allclose(basis.matrix, np.eye(2))

    def test_non_orthogonal_vectors_rejected(self):
        r = 1 / math.sqrt(2)
        with pytest.raises(ValidationError, match="orthonormal"):
            MeasurementBasis(
                vectors=(StateVector(amplitudes=[1, 0]), StateVector(amplitudes=[r, r]))
            )

    def test_incomplete_basis_rejected(self):
        with pytest.raises(ValidationError, match="needs 2 vectors"):
            MeasurementBasis(vectors=(StateVector(amplitudes=[1, 0]),))

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(ValidationError, match="mixed dimensions"):
            MeasurementBasis(
                vectors=(StateVector(amplitudes=[1, 0]), StateVector(amplitudes=[0, 1, 0]))
            )


class TestUnitVector:
    def test_from_array_normalizes(self):
        vector = UnitVector.from_array([0, 3, 4], normalize=True)
        assert vector.as_list() == pytest.approx([0, 0.6, 0.8])

    def test_non_unit_rejected(self):
        with pytest.raises(ValidationError, match="unit vector"):
            UnitVector(x=1, y=1, z=0)

    def test_bloch_negation_and_dot(self):
        z = BlochVector(x=0, y=0, z=1)
        assert (-z).dot(z) == -1.0
        assert isinstance(-z, BlochVector)
