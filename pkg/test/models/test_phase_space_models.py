"""Tests for Gaussian macrostates and symplectic matrices."""

import numpy as np
import pytest
from pydantic import ValidationError

from quantum_fragments.models.phase_space import (
    GaussianMacrostate,
    SymplecticMatrix,
    symplectic_form,
)


def test_symplectic_form_blocks():
    sigma = symplectic_form(2)
    assert sigma.shape == (4, 4)
    assert np.allclose(sigma[:2, :2], [[0, -1], [1, 0]])
    assert np.allclose(sigma @ sigma, -np.eye(4))


class TestGaussianMacrostate:
    def test_valid_state(self):
        state = GaussianMacrostate(mean=[0, 0], cov=np.eye(2) / 2)
        assert state.n_modes == 1
        assert state.to_document()["n_modes"] == 1

    def test_mean_length_must_match(self):
        with pytest.raises(ValidationError, match="does not match"):
            GaussianMacrostate(mean=[0, 0, 0, 0], cov=np.eye(2))

    def test_odd_dimension_rejected(self):
        with pytest.raises(ValidationError, match="2N x 2N"):
            GaussianMacrostate(mean=[0, 0, 0], cov=np.eye(3))

    def test_asymmetric_covariance_rejected(self):
        with pytest.raises(ValidationError, match="not symmetric"):
            GaussianMacrostate(mean=[0, 0], cov=[[1, 0.5], [0, 1]])

    def test_indefinite_covariance_rejected(self):
        with pytest.raises(ValidationError, match="positive semidefinite"):
            GaussianMacrostate(mean=[0, 0], cov=[[1, 2], [2, 1]])

    def test_singular_covariance_allowed(self):
        state = GaussianMacrostate(mean=[0, 0], cov=np.zeros((2, 2)))
        assert state.n_modes == 1


class TestSymplecticMatrix:
    def test_squeezer_is_symplectic(self):
        matrix = SymplecticMatrix(matrix=np.diag([2.0, 0.5]))
        assert matrix.n_modes == 1

    def test_scaling_is_not_symplectic(self):
        with pytest.raises(ValidationError, match="not symplectic"):
            SymplecticMatrix(matrix=2 * np.eye(2))

    def test_composition(self):
        a = SymplecticMatrix(matrix=np.diag([2.0, 0.5]))
        b = SymplecticMatrix(matrix=[[0.0, 1.0], [-1.0, 0.0]])
        assert np.allclose((a @ b).matrix, np.diag([2.0, 0.5]) @ np.array([[0, 1], [-1, 0]]))
