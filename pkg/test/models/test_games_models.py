"""Tests for CHSH strategies and the Hardy and PBR result models."""

import numpy as np
import pytest
from pydantic import ValidationError

from quantum_fragments.models.games import (
    Answer,
    DeterministicStrategy,
    HardyVerdict,
    LHVModel,
    PBRReport,
    QuantumStrategy,
    SimulationResult,
)
from quantum_fragments.models.hilbert import Operator
from quantum_fragments.services import hilbert_service


def test_deterministic_strategy_answers():
    strategy = DeterministicStrategy(a0=Answer.YES, a1=Answer.NO, b0=Answer.NO, b1=Answer.YES)
    assert strategy.alice(1) is Answer.NO
    assert strategy.bob(0) is Answer.NO
    assert strategy.describe() == "A=(yes,no) B=(no,yes)"


class TestLHVModel:
    def test_valid_model(self):
        model = LHVModel(weights=[0.25, 0.75], alice_yes=np.ones((2, 2)), bob_yes=np.zeros((2, 2)))
        assert model.size == 2

    def test_weights_must_be_distribution(self):
        with pytest.raises(ValidationError, match="probability vector"):
            LHVModel(weights=[0.5, 0.6], alice_yes=np.ones((2, 2)), bob_yes=np.ones((2, 2)))

    def test_table_shapes(self):
        with pytest.raises(ValidationError, match="expected \\(2, 2\\)"):
            LHVModel(weights=[0.5, 0.5], alice_yes=np.ones((3, 2)), bob_yes=np.ones((2, 2)))

    def test_table_entries_are_probabilities(self):
        with pytest.raises(ValidationError, match="outside \\[0, 1\\]"):
            LHVModel(weights=[1.0], alice_yes=[[1.2, 0.0]], bob_yes=[[0.0, 0.0]])


class TestQuantumStrategy:
    def test_needs_two_qubits(self):
        sigma3 = hilbert_service.pauli(3)
        with pytest.raises(ValidationError, match="dim 4"):
            QuantumStrategy(
                shared_state=hilbert_service.ket("|0>"),
                alice_observables=(sigma3, sigma3),
                bob_observables=(sigma3, sigma3),
            )

    def test_observables_must_be_pm_one_valued(self):
        sigma3 = hilbert_service.pauli(3)
        projector = Operator(entries=[[1, 0], [0, 0]])
        with pytest.raises(ValidationError, match="not \\+-1 valued"):
            QuantumStrategy(
                shared_state=hilbert_service.singlet(),
                alice_observables=(sigma3, projector),
                bob_observables=(sigma3, sigma3),
            )

    def test_observables_must_be_selfadjoint(self):
        sigma3 = hilbert_service.pauli(3)
        with pytest.raises(ValidationError, match="not selfadjoint"):
            QuantumStrategy(
                shared_state=hilbert_service.singlet(),
                alice_observables=(sigma3, Operator(entries=[[0, 1], [0, 0]])),
                bob_observables=(sigma3, sigma3),
            )

    def test_default_answer_maps(self):
        sigma3 = hilbert_service.pauli(3)
        strategy = QuantumStrategy(
            shared_state=hilbert_service.singlet(),
            alice_observables=(sigma3, sigma3),
            bob_observables=(sigma3, sigma3),
        )
        assert strategy.alice_answers == (Answer.NO, Answer.YES)
        assert strategy.bob_answers == (Answer.YES, Answer.NO)


def test_simulation_interval():
    result = SimulationResult(rounds=100, wins=75, frequency=0.75, analytic=0.75, sigma=0.01)
    assert result.lower == pytest.approx(0.72)
    assert result.upper == pytest.approx(0.78)
    assert result.within_three_sigma


def test_accepted_hardy_verdict_needs_distinct_supports():
    with pytest.raises(ValidationError, match="distinct supports"):
        HardyVerdict(
            m=4,
            lambda_count=2,
            reproduces=True,
            max_deviation=0.0,
            distinct_support_count=2,
            required_bound=2,
        )


def test_pbr_bound_is_p_star_squared():
    report = PBRReport(p_star=0.2, deficit=0.04, inconsistent=True)
    assert report.bound == pytest.approx(0.04)
