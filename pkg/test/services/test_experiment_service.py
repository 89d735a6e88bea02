"""End-to-end runs of every experiment through the runner."""

import logging
import math

import pytest

from quantum_fragments.clients.model_store import save_model
from quantum_fragments.constants import PBR_FIRST, PBR_SECOND
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.experiment import ExperimentConfig, Report
from quantum_fragments.models.ontology import ModelDocument
from quantum_fragments.services import experiment_service, hardy_service, ontology_service


def run(experiment, **options) -> Report:
    return experiment_service.run(ExperimentConfig(experiment=experiment, **options))


def row(report: Report, name: str):
    matches = [r for r in report.rows if r.name == name]
    assert matches, f"no row named {name!r} in {[r.name for r in report.rows]}"
    return matches[0]


def hardy_document(m: int, n: int = 0) -> ModelDocument:
    """Hardy model file; n = 0 selects the orthodox model, otherwise the coarse one."""
    qa = hardy_service.hardy_assignment(m)
    model = (
        ontology_service.orthodox_model_from_assignment(qa)
        if n == 0
        else hardy_service.coarse_hardy_model(m, n)
    )
    bindings = {f"psi{j}": f"hardy:{m}:{j}" for j in range(m)}
    bindings.update({f"basis{j}": f"hardy:{m}:{j}" for j in range(m)})
    return ModelDocument.model_validate({**model.to_document(), "bindings": bindings})


class TestToy:
    def test_default_run_passes(self):
        report = run("toy")
        assert report.passed
        assert sum(1 for r in report.rows if r.name.startswith(("a ", "b ", "c ", "~"))) == 18

    def test_disturbance_rows(self):
        report = run("toy")
        assert row(report, "P(A repeats across B)").computed == 0.5
        assert row(report, "single-shot distinguishability of a and b").computed == 0.75

    def test_custom_sequence(self):
        report = run("toy", state="b", sequence="B,B")
        assert row(report, "P(b, b | b)").computed == 1.0
        assert row(report, "P(~b, ~b | b)").computed == 0.0
        assert row(report, "sampled outcomes").computed == "b b"

    def test_unknown_state(self):
        with pytest.raises(Exception, match="Unknown toy macrostate"):
            run("toy", state="z")


class TestCHSH:
    def test_enumerate(self):
        report = run("chsh", mode="enumerate")
        assert report.passed
        assert row(report, "max deterministic win").computed == 0.75
        assert row(report, "deterministic strategies").computed == 16.0

    def test_quantum(self):
        report = run("chsh", mode="quantum")
        assert report.passed
        dumped = row(report, "quantum win (canonical singlet)").model_dump(mode="json")
        assert dumped["computed"] == 0.8535533906

    def test_lhv_sweep(self):
        assert run("chsh", mode="lhv-sweep", trials=50).passed

    def test_simulate(self):
        report = run("chsh", mode="simulate", samples=50_000, seed=5)
        assert report.passed
        assert len(report.rows) == 2

    def test_default_mode_is_enumerate(self):
        enumerate_rows = run("chsh", mode="enumerate").rows
        assert [r.name for r in run("chsh").rows] == [r.name for r in enumerate_rows]

    def test_unknown_mode(self):
        with pytest.raises(InvalidParameterError, match="Unknown chsh mode 'bell'"):
            run("chsh", mode="bell")


class TestKochenSpecker:
    def test_born(self):
        assert run("ks", mode="born", pairs=3, samples=20_000).passed

    def test_born_check(self):
        report = run("ks", mode="born-check")
        assert report.passed
        assert row(report, "triples compared").computed == 36.0

    def test_overlap(self):
        assert run("ks", mode="overlap", pairs=3).passed

    def test_convergence(self):
        report = run("ks", mode="convergence", pairs=3, resolution="64x128")
        assert report.passed
        assert row(report, "max error at 16x32").passed is None


class TestGaussian:
    def test_uncertainty(self):
        assert run("gaussian", mode="uncertainty", trials=40).passed

    def test_no_cloning(self):
        report = run("gaussian", mode="no-cloning", trials=20)
        assert report.passed
        assert row(report, "F(coherent 0, coherent 1)").computed == pytest.approx(math.exp(-0.25))

    def test_no_cloning_with_zero_scale_uses_default(self):
        report = run("gaussian", mode="no-cloning", trials=5, rr_scale=0.0)
        assert row(report, "F(coherent 0, coherent 1)").computed == pytest.approx(math.exp(-0.25))

    def test_epr(self):
        report = run("gaussian", mode="epr", squeeze=0.05, displacement=2.0)
        assert report.passed
        assert row(report, "posterior mean of x2 given x1 = 0").computed == pytest.approx(2.0)

    @pytest.mark.parametrize("squeeze", [1.0, 0.1, 1e-3, 3e-4, 1e-4])
    def test_epr_state_valid_at_every_width(self, squeeze):
        report = run("gaussian", mode="epr", squeeze=squeeze)
        assert row(report, "EPR state satisfies the restriction").passed


class TestHardy:
    def test_default_run(self):
        report = run("hardy", m=8)
        assert report.passed
        assert row(report, "required ontic bits ceil(log2 M)").computed == 3.0

    def test_accepts_orthodox_model_file(self, tmp_path):
        path = save_model(hardy_document(4), tmp_path / "orthodox.json")
        report = run("hardy", model=path)
        assert report.passed
        assert row(report, "distinct supports").computed == 4.0

    def test_rejects_coarse_model_file(self, tmp_path):
        path = save_model(hardy_document(4, n=1), tmp_path / "coarse.json")
        report = run("hardy", model=path)
        assert not report.passed
        assert row(report, "model reproduces the bound states").passed is False

    def test_family_size_validated(self):
        with pytest.raises(Exception):
            run("hardy", m=1)


class TestPBR:
    def test_default_run(self):
        report = run("pbr", trials=20)
        assert report.passed
        assert row(report, "P(Phi11 | Psi11)").computed == pytest.approx(0.0, abs=1e-12)
        assert row(report, "toy embedding P*").computed == 0.5
        assert row(report, "copies needed to reach overlap^2 < 1/2").computed == 2.0

    def test_disjoint_model_is_consistent(self, tmp_path):
        document = ModelDocument(
            lambda_count=2, preparations={PBR_FIRST: [1.0, 0.0], PBR_SECOND: [0.0, 1.0]}
        )
        report = run("pbr", model=save_model(document, tmp_path / "disjoint.json"))
        assert report.passed

    def test_overlapping_model_is_contradicted(self, tmp_path):
        document = ModelDocument(
            lambda_count=3, preparations={"zero": [0.5, 0.5, 0.0], "plus": [0.5, 0.0, 0.5]}
        )
        report = run("pbr", model=save_model(document, tmp_path / "overlap.json"))
        assert not report.passed
        assert row(report, "model deficit vs P*^2").passed
        assert row(report, "model P*").computed == 0.5

    def test_model_needs_two_preparations(self, tmp_path):
        document = ModelDocument(lambda_count=1, preparations={"only": [1.0]})
        with pytest.raises(InvalidParameterError, match="two preparations"):
            run("pbr", model=save_model(document, tmp_path / "single.json"))


def test_mach_zehnder():
    report = run("mach-zehnder")
    assert report.passed
    assert row(report, "P(D1) with second beamsplitter").computed == pytest.approx(0.0, abs=1e-12)


def test_unknown_experiment():
    with pytest.raises(InvalidParameterError, match="Unknown experiment 'bell'"):
        run("bell")


def test_runs_are_deterministic():
    first = run("chsh", mode="simulate", samples=20_000, seed=9)
    second = run("chsh", mode="simulate", samples=20_000, seed=9)
    assert [r.computed for r in first.rows] == [r.computed for r in second.rows]


def test_parameters_echoed():
    report = run("ks", mode="overlap", pairs=2, resolution="32x64", seed=3)
    assert report.parameters["resolution"] == "32x64"
    assert report.parameters["seed"] == 3
    assert report.parameters["mode"] == "overlap"


def test_failing_rows_are_logged(tmp_path, caplog):
    path = save_model(hardy_document(4, n=1), tmp_path / "coarse.json")
    with caplog.at_level(logging.WARNING, logger="quantum_fragments.services.experiment_service"):
        run("hardy", model=path)
    assert "failing rows" in caplog.text
