"""Tests for toy macrostates and measurements."""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from quantum_fragments.models.toy import (
    ToyMacrostate,
    ToyMeasurement,
    ToyMeasurementLabel,
    to_fraction,
)


def test_to_fraction_snaps_float_noise():
    assert to_fraction(0.5 + 1e-14) == Fraction(1, 2)
    assert to_fraction(0.25) == Fraction(1, 4)
    assert to_fraction("1/2") == Fraction(1, 2)


def test_extremal_macrostate_accepted():
    state = ToyMacrostate(p=[0.5, 0.5, 0, 0], label="a")
    assert state.p == (Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0))
    assert state.describe() == "(1/2, 1/2, 0, 0)"


def test_sharp_macrostate_violates_restriction():
    with pytest.raises(ValidationError, match="more than one bit"):
        ToyMacrostate(p=[1, 0, 0, 0])


def test_negative_entry_rejected():
    with pytest.raises(ValidationError, match="Negative"):
        ToyMacrostate(p=[Fraction(3, 4), Fraction(1, 2), Fraction(-1, 4), 0])


def test_unnormalized_macrostate_rejected():
    with pytest.raises(ValidationError, match="sum"):
        ToyMacrostate(p=[Fraction(1, 4)] * 3 + [0])


def test_wrong_length_rejected():
    with pytest.raises(ValidationError, match="4 entries"):
        ToyMacrostate(p=[0.5, 0.5])


def test_serialises_as_fraction_strings():
    state = ToyMacrostate(p=[Fraction(1, 4)] * 4)
    assert state.model_dump()["p"] == ["1/4"] * 4


def test_same_distribution_ignores_label():
    assert ToyMacrostate(p=[0.5, 0.5, 0, 0], label="a").same_distribution(
        ToyMacrostate(p=[0.5, 0.5, 0, 0])
    )


def test_measurement_partition_must_cover_grid():
    with pytest.raises(ValidationError, match="does not cover"):
        ToyMeasurement(label=ToyMeasurementLabel.A, partition=((0, 1), (1, 3)))


def test_outcome_of_cell():
    meas = ToyMeasurement(label=ToyMeasurementLabel.B, partition=((0, 2), (1, 3)))
    assert [meas.outcome_of(cell) for cell in range(4)] == [0, 1, 0, 1]
