"""Experiment runner: dispatches a configured subcommand and collects its result rows."""

import logging
import math
import time
from pathlib import Path
from typing import Callable, Dict, List

import numpy as np

from quantum_fragments.clients.model_store import load_model
from quantum_fragments.constants import (
    CLASSICAL_CHSH_BOUND,
    DEFAULT_RR_SCALE,
    KS_TOLERANCE,
    MIN_RESOLUTION,
    PBR_FIRST,
    PBR_SECOND,
    QUANTUM_CHSH_VALUE,
    TOL_ALG,
    TOL_HARDY,
)
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.experiment import Comparison, ExperimentConfig, Report, ResultRow
from quantum_fragments.models.games import PBRReport
from quantum_fragments.models.ontology import FiniteOntologicalModel
from quantum_fragments.services import (
    binding_service,
    chsh_service,
    hardy_service,
    hilbert_service,
    kochen_specker_service,
    ontology_service,
    pbr_service,
    phase_space_service,
    toy_service,
)
from quantum_fragments.utils.rng import chunked, make_rng

logger = logging.getLogger(__name__)

Rows = List[ResultRow]

DEFAULT_TOY_SEQUENCE = ["A", "B", "A"]

# Monte Carlo rows pass within this many binomial standard errors
SIGMA_SLACK = 5.0


def _sampling_tolerance(p: float, samples: int) -> float:
    return SIGMA_SLACK * math.sqrt(max(p * (1 - p), 0.0) / samples) + TOL_ALG


# Toy theory


def _fraction_text(pair: tuple) -> str:
    return ",".join(str(v) for v in pair)


def toy_rows(config: ExperimentConfig) -> Rows:
    rows: Rows = []
    for entry in toy_service.qubit_correspondence_report():
        rows.append(
            ResultRow.flag(
                f"{entry.macrostate} under {entry.measurement.value} ~ "
                f"{entry.qubit_state} under sigma{entry.pauli_axis}",
                entry.matches,
                f"toy {_fraction_text(entry.toy)} / born {_fraction_text(entry.quantum)}",
            )
        )

    a, b = toy_service.measurement("A"), toy_service.measurement("B")
    start = toy_service.macrostate("a")
    rows.append(
        ResultRow.check(
            "P(repeat A outcome)", 1.0, float(toy_service.repeat_probability(start, [a, a])), 0.0
        )
    )
    rows.append(
        ResultRow.check(
            "P(A repeats across B)",
            0.5,
            float(toy_service.repeat_probability(start, [a, b, a])),
            0.0,
        )
    )
    rows.append(
        ResultRow.check(
            "overlap(a, b)",
            0.5,
            float(toy_service.overlap(start, toy_service.macrostate("b"))),
            0.0,
        )
    )
    rows.append(
        ResultRow.check(
            "single-shot distinguishability of a and b",
            0.75,
            float(toy_service.single_shot_distinguish_bound(start, toy_service.macrostate("b"))),
            0.0,
        )
    )
    swapped = toy_service.permute(start, toy_service.SWAP_01_10)
    rows.append(
        ResultRow.flag(
            "swap of (0,1) and (1,0) maps a to b", swapped.label == "b", swapped.describe()
        )
    )

    state = toy_service.macrostate(config.state)
    names = config.sequence or DEFAULT_TOY_SEQUENCE
    sequence = [toy_service.measurement(name) for name in names]
    for outcomes, weight in toy_service.sequence_statistics(state, sequence).items():
        labels = ", ".join(toy_service.outcome_label(m, k) for m, k in zip(sequence, outcomes))
        rows.append(ResultRow.info(f"P({labels} | {config.state})", float(weight)))

    rng = make_rng(config.seed)
    current = state
    observed = []
    for meas in sequence:
        outcome, current = toy_service.measure(current, meas, rng)
        observed.append(toy_service.outcome_label(meas, outcome))
    rows.append(ResultRow.info("sampled outcomes", " ".join(observed)))
    return rows


# CHSH game


def _chsh_enumerate(config: ExperimentConfig) -> Rows:
    strategies = chsh_service.all_deterministic_strategies()
    scores = [chsh_service.evaluate_deterministic(s) for s in strategies]
    best, value = chsh_service.best_deterministic()
    optimal = sum(1 for score in scores if score == value)
    return [
        ResultRow.info("deterministic strategies", float(len(strategies))),
        ResultRow.check("max deterministic win", CLASSICAL_CHSH_BOUND, value, TOL_ALG),
        ResultRow.info("optimal strategies", float(optimal)),
        ResultRow.info("an optimal strategy", best.describe()),
    ]


def _chsh_quantum(config: ExperimentConfig) -> Rows:
    canonical = chsh_service.evaluate_quantum(chsh_service.canonical_quantum_strategy())
    aligned = chsh_service.evaluate_quantum(chsh_service.aligned_sigma3_strategy())
    return [
        ResultRow.check("quantum win (canonical singlet)", QUANTUM_CHSH_VALUE, canonical, TOL_ALG),
        ResultRow.check(
            "quantum win (both measure sigma3)", CLASSICAL_CHSH_BOUND, aligned, TOL_ALG
        ),
        ResultRow.flag(
            "quantum exceeds classical bound",
            not chsh_service.classical_bound_holds(canonical),
            f"{canonical:.10g} > {CLASSICAL_CHSH_BOUND}",
        ),
    ]


def _chsh_lhv_sweep(config: ExperimentConfig) -> Rows:
    best = chsh_service.lhv_sweep(config.trials, config.seed)
    return [
        ResultRow.info("local models sampled", float(config.trials)),
        ResultRow.check(
            "max local-model win", CLASSICAL_CHSH_BOUND, best, TOL_ALG, Comparison.LE
        ),
    ]


def _chsh_simulate(config: ExperimentConfig) -> Rows:
    rows: Rows = []
    strategies = {
        "quantum": chsh_service.canonical_quantum_strategy(),
        "deterministic": chsh_service.best_deterministic()[0],
    }
    for name, strategy in strategies.items():
        result = chsh_service.simulate_game(strategy, config.samples, config.seed)
        rows.append(
            ResultRow.check(
                f"simulated {name} win frequency",
                result.analytic,
                result.frequency,
                _sampling_tolerance(result.analytic, result.rounds),
            )
        )
    return rows


_CHSH_MODES: Dict[str, Callable[[ExperimentConfig], Rows]] = {
    "enumerate": _chsh_enumerate,
    "quantum": _chsh_quantum,
    "lhv-sweep": _chsh_lhv_sweep,
    "simulate": _chsh_simulate,
}


# Kochen-Specker sphere model


def _ks_born(config: ExperimentConfig) -> Rows:
    rng = make_rng(config.seed)
    pairs = kochen_specker_service.random_pairs(rng, config.pairs)
    error = kochen_specker_service.max_born_error(pairs, config.resolution)
    phi, psi = pairs[0]
    mass = kochen_specker_service.ks_total_mass(psi, config.resolution)

    born = hilbert_service.born_bloch(phi, psi)
    hits = 0
    for size, chunk_rng in chunked(config.seed, config.samples):
        points = kochen_specker_service.sample_ks_batch(psi, chunk_rng, size)
        hits += int(np.count_nonzero(points @ phi.array >= 0.0))
    sampled = hits / config.samples
    return [
        ResultRow.check(
            f"max |quadrature - Born| over {config.pairs} pairs",
            0.0,
            error,
            KS_TOLERANCE,
            Comparison.LE,
        ),
        ResultRow.check("total preparation mass", 1.0, mass, KS_TOLERANCE),
        ResultRow.check(
            "sampled P(Phi|Psi) for the first pair",
            born,
            sampled,
            _sampling_tolerance(born, config.samples),
        ),
    ]


def _ks_born_check(config: ExperimentConfig) -> Rows:
    """Discretised model against the six Pauli eigenstates and three Pauli bases."""
    qa = toy_service.toy_quantum_assignment()
    model = kochen_specker_service.discretize_ks(config.resolution, qa)
    report = ontology_service.reproduces_quantum(model, qa, KS_TOLERANCE)
    return [
        ResultRow.info("ontic states", float(model.lambda_count)),
        ResultRow.info("triples compared", float(report.checked)),
        ResultRow.check(
            "max |model - Born|", 0.0, report.max_deviation, KS_TOLERANCE, Comparison.LE
        ),
    ]


def _ks_overlap(config: ExperimentConfig) -> Rows:
    rng = make_rng(config.seed)
    pairs = kochen_specker_service.random_pairs(rng, config.pairs)
    errors = []
    overlaps = []
    for psi1, psi2 in pairs:
        value = kochen_specker_service.ks_overlap(psi1, psi2, config.resolution)
        overlaps.append(value)
        errors.append(abs(value - kochen_specker_service.analytic_ks_overlap(psi1, psi2)))
    antipodal = kochen_specker_service.ks_overlap(pairs[0][0], -pairs[0][0], config.resolution)
    return [
        ResultRow.check(
            "max |overlap - (1 - sin(alpha/2))|", 0.0, max(errors), KS_TOLERANCE, Comparison.LE
        ),
        ResultRow.flag(
            "nonorthogonal states overlap",
            all(value > 0 for value in overlaps),
            f"min overlap {min(overlaps):.6g}",
        ),
        ResultRow.check("overlap of orthogonal states", 0.0, antipodal, KS_TOLERANCE),
    ]


def _ks_convergence(config: ExperimentConfig) -> Rows:
    n_theta, n_phi = config.resolution
    resolutions = sorted(
        {
            MIN_RESOLUTION,
            (max(MIN_RESOLUTION[0], n_theta // 4), max(MIN_RESOLUTION[1], n_phi // 4)),
            (max(MIN_RESOLUTION[0], n_theta // 2), max(MIN_RESOLUTION[1], n_phi // 2)),
            (n_theta, n_phi),
        }
    )
    study = kochen_specker_service.ks_convergence(config.pairs, resolutions, make_rng(config.seed))
    rows: Rows = [
        ResultRow.info(f"max error at {p.resolution[0]}x{p.resolution[1]}", p.max_error)
        for p in study.points
    ]
    first, last = study.points[0].max_error, study.points[-1].max_error
    rows.append(ResultRow.check("finest error vs coarsest", first, last, 0.0, Comparison.LE))
    return rows


_KS_MODES: Dict[str, Callable[[ExperimentConfig], Rows]] = {
    "born": _ks_born,
    "born-check": _ks_born_check,
    "overlap": _ks_overlap,
    "convergence": _ks_convergence,
}


# Gaussian phase space


def _gaussian_uncertainty(config: ExperimentConfig) -> Rows:
    rng = make_rng(config.seed)
    lam = config.rr_scale
    worst_gap = math.inf
    worst_drift = 0.0
    all_valid = True
    for _ in range(config.trials):
        n_modes = int(rng.integers(1, 3))
        state = phase_space_service.random_rr_valid(rng, n_modes, lam)
        all_valid &= phase_space_service.rr_satisfied(state, lam).satisfied
        product = float(phase_space_service.uncertainty_product(state).min())
        worst_gap = min(worst_gap, product - lam)
        flow = phase_space_service.random_symplectic(rng, n_modes)
        evolved = phase_space_service.evolve(state, flow)
        drift = abs(
            phase_space_service.symplectic_margin(evolved, lam)
            - phase_space_service.symplectic_margin(state, lam)
        )
        worst_drift = max(worst_drift, drift)
    vacuum = phase_space_service.vacuum(1, lam)
    return [
        ResultRow.flag("random states satisfy the restriction", all_valid),
        ResultRow.check("min (dx dp - lambda)", 0.0, worst_gap, TOL_HARDY, Comparison.GE),
        ResultRow.check(
            "max margin drift under evolution", 0.0, worst_drift, TOL_HARDY, Comparison.LE
        ),
        ResultRow.check(
            "vacuum dx dp", lam, float(phase_space_service.uncertainty_product(vacuum)[0]), TOL_ALG
        ),
    ]


def _gaussian_no_cloning(config: ExperimentConfig) -> Rows:
    lam = config.rr_scale if config.rr_scale > 0 else DEFAULT_RR_SCALE
    rng = make_rng(config.seed)
    f = phase_space_service.coherent(0.0, 0.0, lam)
    g = phase_space_service.coherent(1.0, 0.0, lam)
    value = phase_space_service.fidelity(f, g)
    closed_form = math.exp(-1.0 / (8 * lam))

    worst_drift = 0.0
    for _ in range(config.trials):
        a = phase_space_service.random_symplectic(rng, 1)
        evolved = phase_space_service.fidelity(
            phase_space_service.evolve(f, a), phase_space_service.evolve(g, a)
        )
        worst_drift = max(worst_drift, abs(evolved - value))

    distinct = phase_space_service.no_cloning_witness(f, g)
    same = phase_space_service.no_cloning_witness(f, f)
    return [
        ResultRow.check("F(coherent 0, coherent 1)", closed_form, value, TOL_ALG),
        ResultRow.check(
            "max fidelity drift under evolution", 0.0, worst_drift, TOL_HARDY, Comparison.LE
        ),
        ResultRow.flag("cloning impossible for 0 < F < 1", distinct.cloning_impossible),
        ResultRow.flag("identical states may be cloned", not same.cloning_impossible),
    ]


def _gaussian_epr(config: ExperimentConfig) -> Rows:
    c, s = config.displacement, config.squeeze
    state = phase_space_service.epr_state(c, s)
    check = phase_space_service.rr_satisfied(state, config.rr_scale)
    on_x = phase_space_service.condition_on_position(state, 1, 0.0)
    on_p = phase_space_service.condition_on_quadrature(state, 1, "p", 1.0)
    return [
        ResultRow.flag(
            "EPR state satisfies the restriction", check.satisfied, f"margin {check.margin:.3e}"
        ),
        ResultRow.check("posterior mean of x2 given x1 = 0", c, float(on_x.mean[0]), 1e-6),
        ResultRow.check(
            "posterior std of x2 given x1 = 0",
            2 * s,
            math.sqrt(float(on_x.cov[0, 0])),
            0.0,
            Comparison.LE,
        ),
        ResultRow.check(
            "posterior mean of p2 given p1 = 1",
            -(1 - s**4) / (1 + s**4),
            float(on_p.mean[1]),
            1e-6,
        ),
        ResultRow.info("prior variance of x1", float(state.cov[0, 0])),
    ]


_GAUSSIAN_MODES: Dict[str, Callable[[ExperimentConfig], Rows]] = {
    "uncertainty": _gaussian_uncertainty,
    "no-cloning": _gaussian_no_cloning,
    "epr": _gaussian_epr,
}


# Hardy bound


def hardy_rows(config: ExperimentConfig) -> Rows:
    if config.model is not None:
        document = load_model(config.model)
        qa = binding_service.assignment_from_document(document)
        verdict = hardy_service.hardy_check(document, qa)
        detail = verdict.witness.detail if verdict.witness else "accepted"
        return [
            ResultRow.info("M", float(verdict.m)),
            ResultRow.info("ontic states", float(verdict.lambda_count)),
            ResultRow.info("distinct supports", float(verdict.distinct_support_count)),
            ResultRow.info("max Born deviation", verdict.max_deviation),
            ResultRow.flag("model reproduces the bound states", verdict.reproduces, detail),
            ResultRow.flag(
                "2^N >= M for accepted models",
                not verdict.reproduces or 2**verdict.lambda_count >= verdict.m,
            ),
        ]

    m = config.m
    qa = hardy_service.hardy_assignment(m)
    orthodox = ontology_service.orthodox_model_from_assignment(qa)
    accepted = hardy_service.hardy_check(orthodox, qa)
    n = max(1, math.ceil(math.log2(m)) - 1)
    coarse = hardy_service.coarse_hardy_model(m, n)
    rejected = hardy_service.hardy_check(coarse, qa)
    witness = rejected.witness
    return [
        ResultRow.info("required ontic bits ceil(log2 M)", float(accepted.required_bound)),
        ResultRow.flag(
            f"orthodox {orthodox.lambda_count}-point model accepted",
            accepted.reproduces and accepted.distinct_support_count == m,
        ),
        ResultRow.flag(
            f"coarse {coarse.lambda_count}-point model rejected",
            not rejected.reproduces and witness is not None,
            f"{witness.kind.value}: {witness.detail}" if witness else "accepted",
        ),
    ]


# PBR argument


def _pbr_report_rows(report: PBRReport, prefix: str) -> Rows:
    return [
        ResultRow.info(f"{prefix} P*", report.p_star),
        ResultRow.check(
            f"{prefix} deficit vs P*^2", report.bound, report.deficit, TOL_HARDY, Comparison.GE
        ),
    ]


def _single_from_document(path: Path) -> FiniteOntologicalModel:
    document = load_model(path)
    if PBR_FIRST in document.preparations and PBR_SECOND in document.preparations:
        return document
    labels = list(document.preparations)
    if len(labels) < 2:
        raise InvalidParameterError("The PBR check needs a model with two preparations")
    logger.info(f"Using '{labels[0]}' and '{labels[1]}' as the two single-system preparations")
    return pbr_service.relabel_for_pbr(document, labels[0], labels[1])


def pbr_rows(config: ExperimentConfig) -> Rows:
    basis = pbr_service.pbr_basis()
    preparations = pbr_service.pbr_preparations()
    rows: Rows = []
    for index, (outcome, (label, state)) in enumerate(
        zip(pbr_service.pbr_outcome_labels(), preparations.items())
    ):
        born = hilbert_service.born_probabilities(state, basis)
        rows.append(ResultRow.check(f"P({outcome} | {label})", 0.0, float(born[index]), TOL_ALG))

    if config.model is not None:
        report = pbr_service.pbr_contradiction(_single_from_document(config.model))
        rows.extend(_pbr_report_rows(report, "model"))
        rows.append(
            ResultRow.flag(
                "model consistent with quantum predictions",
                not report.inconsistent,
                f"P* = {report.p_star:.6g}",
            )
        )
        return rows

    toy = pbr_service.relabel_for_pbr(toy_service.toy_ontological_model(), "a", "b")
    rows.extend(_pbr_report_rows(pbr_service.pbr_contradiction(toy), "toy embedding"))

    rng = make_rng(config.seed)
    worst = math.inf
    all_inconsistent = True
    for _ in range(config.trials):
        report = pbr_service.pbr_contradiction(pbr_service.random_overlapping_model(rng))
        worst = min(worst, report.deficit - report.bound)
        all_inconsistent &= report.inconsistent
    rows.append(ResultRow.info("random overlapping models", float(config.trials)))
    rows.append(ResultRow.check("min (deficit - P*^2)", 0.0, worst, TOL_HARDY, Comparison.GE))
    rows.append(ResultRow.flag("every overlapping model contradicted", all_inconsistent))

    single = [hilbert_service.ket(name) for name in pbr_service.SINGLE_STATES.values()]
    moseley = pbr_service.moseley_copies(abs(hilbert_service.inner(*single)) ** 2)
    rows.append(ResultRow.info("copies needed to reach overlap^2 < 1/2", float(moseley.copies)))
    return rows


# Mach-Zehnder interferometer


def mach_zehnder_rows(config: ExperimentConfig) -> Rows:
    closed = hilbert_service.mach_zehnder(True)
    opened = hilbert_service.mach_zehnder(False)
    return [
        ResultRow.check("P(D0) with second beamsplitter", 1.0, float(closed[0]), TOL_ALG),
        ResultRow.check("P(D1) with second beamsplitter", 0.0, float(closed[1]), TOL_ALG),
        ResultRow.check("P(D0) without second beamsplitter", 0.5, float(opened[0]), TOL_ALG),
        ResultRow.check("P(D1) without second beamsplitter", 0.5, float(opened[1]), TOL_ALG),
    ]


def _moded(
    experiment: str, modes: Dict[str, Callable[[ExperimentConfig], Rows]], default: str
) -> Callable[[ExperimentConfig], Rows]:
    def dispatch(config: ExperimentConfig) -> Rows:
        mode = config.mode or default
        if mode not in modes:
            raise InvalidParameterError(
                f"Unknown {experiment} mode '{mode}'. Available: {', '.join(modes)}"
            )
        return modes[mode](config)

    return dispatch


EXPERIMENTS: Dict[str, Callable[[ExperimentConfig], Rows]] = {
    "toy": toy_rows,
    "chsh": _moded("chsh", _CHSH_MODES, "enumerate"),
    "ks": _moded("ks", _KS_MODES, "born"),
    "gaussian": _moded("gaussian", _GAUSSIAN_MODES, "uncertainty"),
    "hardy": hardy_rows,
    "pbr": pbr_rows,
    "mach-zehnder": mach_zehnder_rows,
}

MODES: Dict[str, List[str]] = {
    "chsh": list(_CHSH_MODES),
    "ks": list(_KS_MODES),
    "gaussian": list(_GAUSSIAN_MODES),
}


def run(config: ExperimentConfig) -> Report:
    """Run one experiment and return its report; deterministic given the config."""
    if config.experiment not in EXPERIMENTS:
        raise InvalidParameterError(
            f"Unknown experiment '{config.experiment}'. Available: {', '.join(EXPERIMENTS)}"
        )
    label = config.experiment if config.mode is None else f"{config.experiment} {config.mode}"
    logger.info(f"Running {label} with seed {config.seed}")
    started = time.perf_counter()
    try:
        rows = EXPERIMENTS[config.experiment](config)
    except Exception as e:
        logger.error(f"Experiment {label} failed: {e}")
        raise
    duration = time.perf_counter() - started
    failed = [row.name for row in rows if row.passed is False]
    if failed:
        logger.warning(f"{label}: {len(failed)} failing rows: {', '.join(failed)}")
    logger.info(f"Finished {label} in {duration:.3f}s")
    return Report(
        experiment=config.experiment,
        parameters=config.parameters(),
        rows=rows,
        duration_seconds=duration,
    )
