"""The CHSH game: classical strategies, local hidden variables and quantum play."""

import logging
import math
from itertools import product
from typing import List, Sequence, Tuple, Union

import numpy as np

from quantum_fragments.constants import CLASSICAL_CHSH_BOUND, DEFAULT_SEED, TOL_ALG
from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.games import (
    Answer,
    DeterministicStrategy,
    GameStrategy,
    LHVModel,
    QuantumStrategy,
    SimulationResult,
)
from quantum_fragments.models.hilbert import Operator
from quantum_fragments.services import hilbert_service
from quantum_fragments.utils.rng import chunked

logger = logging.getLogger(__name__)

QUESTIONS: Tuple[Tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


def winning_predicate(x: int, y: int, ax: Answer, by: Answer) -> bool:
    """Answers must differ on (1, 1) and agree on every other question pair."""
    if (x, y) == (1, 1):
        return ax != by
    return ax == by


def _win_table() -> np.ndarray:
    """wins[x, y, a, b] with index 0 = yes, 1 = no."""
    answers = (Answer.YES, Answer.NO)
    table = np.zeros((2, 2, 2, 2))
    for x, y, a, b in product(range(2), range(2), range(2), range(2)):
        table[x, y, a, b] = float(winning_predicate(x, y, answers[a], answers[b]))
    return table


WIN_TABLE = _win_table()


def evaluate_deterministic(strategy: DeterministicStrategy) -> float:
    """Win probability under uniformly random questions."""
    wins = sum(winning_predicate(x, y, strategy.alice(x), strategy.bob(y)) for x, y in QUESTIONS)
    return wins / len(QUESTIONS)


def all_deterministic_strategies() -> List[DeterministicStrategy]:
    return [
        DeterministicStrategy(a0=a0, a1=a1, b0=b0, b1=b1)
        for a0, a1, b0, b1 in product(Answer, repeat=4)
    ]


def best_deterministic() -> Tuple[DeterministicStrategy, float]:
    scored = [(s, evaluate_deterministic(s)) for s in all_deterministic_strategies()]
    return max(scored, key=lambda item: item[1])


def evaluate_lhv(model: LHVModel) -> float:
    """sum_lambda p(lambda) (1/4) sum_xy P(win | x, y, lambda) with factorised answers."""
    alice = np.stack([model.alice_yes, 1.0 - model.alice_yes], axis=-1)  # (L, x, a)
    bob = np.stack([model.bob_yes, 1.0 - model.bob_yes], axis=-1)  # (L, y, b)
    per_lambda = np.einsum("lxa,lyb,xyab->l", alice, bob, WIN_TABLE) / len(QUESTIONS)
    return float(model.weights @ per_lambda)


def deterministic_as_lhv(strategy: DeterministicStrategy) -> LHVModel:
    return mixture_of_deterministic([1.0], [strategy])


def mixture_of_deterministic(
    weights: Sequence[float], strategies: Sequence[DeterministicStrategy]
) -> LHVModel:
    """Shared randomness choosing among deterministic strategies."""
    if len(weights) != len(strategies) or not strategies:
        raise InvalidParameterError("Need one weight per strategy")
    alice = [[float(s.alice(x) is Answer.YES) for x in (0, 1)] for s in strategies]
    bob = [[float(s.bob(y) is Answer.YES) for y in (0, 1)] for s in strategies]
    return LHVModel(weights=list(weights), alice_yes=alice, bob_yes=bob)


def random_lhv_model(rng: np.random.Generator, max_size: int = 32) -> LHVModel:
    """Random Lambda of size 1..max_size with random weights and response tables."""
    size = int(rng.integers(1, max_size + 1))
    weights = rng.dirichlet(np.ones(size))
    return LHVModel(
        weights=weights, alice_yes=rng.random((size, 2)), bob_yes=rng.random((size, 2))
    )


def lhv_sweep(trials: int, seed: int = DEFAULT_SEED, max_size: int = 32) -> float:
    """Largest win probability over a seeded sweep of random local models."""
    rng = np.random.default_rng(seed)
    best = max(evaluate_lhv(random_lhv_model(rng, max_size)) for _ in range(trials))
    logger.info(f"LHV sweep of {trials} models: best win probability {best:.12f}")
    return best


def canonical_quantum_strategy() -> QuantumStrategy:
    """Singlet; Alice measures sigma3 / sigma1, Bob (sigma3 +- sigma1)/sqrt2."""
    s1, s3 = hilbert_service.pauli(1).entries, hilbert_service.pauli(3).entries
    r = 1 / math.sqrt(2)
    return QuantumStrategy(
        shared_state=hilbert_service.singlet(),
        alice_observables=(Operator(entries=s3), Operator(entries=s1)),
        bob_observables=(Operator(entries=r * (s3 + s1)), Operator(entries=r * (s3 - s1))),
    )


def _projectors(observable: Operator) -> Tuple[np.ndarray, np.ndarray]:
    """Projectors onto the +1 and -1 eigenspaces."""
    identity = np.eye(observable.dim)
    return (identity + observable.entries) / 2, (identity - observable.entries) / 2


def joint_outcomes(strategy: QuantumStrategy, x: int, y: int) -> np.ndarray:
    """P(alice sign index, bob sign index) for questions (x, y); index 0 is +1."""
    state = strategy.shared_state.amplitudes
    alice = _projectors(strategy.alice_observables[x])
    bob = _projectors(strategy.bob_observables[y])
    table = np.zeros((2, 2))
    for i, j in product(range(2), range(2)):
        projected = np.kron(alice[i], bob[j]) @ state
        table[i, j] = float(np.vdot(projected, projected).real)
    return table


def evaluate_quantum(strategy: QuantumStrategy) -> float:
    """Average over uniform questions of the Born-rule winning probability."""
    return float(_win_probabilities_per_question(strategy).mean())


def aligned_sigma3_strategy() -> QuantumStrategy:
    """Both players measure sigma3 on every question of the singlet."""
    s3 = hilbert_service.pauli(3)
    return QuantumStrategy(
        shared_state=hilbert_service.singlet(),
        alice_observables=(s3, s3),
        bob_observables=(s3, s3),
    )


def _random_observable(rng: np.random.Generator) -> Operator:
    bloch = rng.normal(size=3)
    bloch /= np.linalg.norm(bloch)
    entries = sum(c * hilbert_service.pauli(k + 1).entries for k, c in enumerate(bloch))
    return Operator(entries=entries)


def random_product_strategy(rng: np.random.Generator) -> QuantumStrategy:
    """Unentangled shared state with random local +-1 observables."""
    shared = hilbert_service.tensor(
        hilbert_service.random_state(rng), hilbert_service.random_state(rng)
    )
    return QuantumStrategy(
        shared_state=shared,
        alice_observables=(_random_observable(rng), _random_observable(rng)),
        bob_observables=(_random_observable(rng), _random_observable(rng)),
    )


def evaluate(strategy: GameStrategy) -> float:
    if isinstance(strategy, DeterministicStrategy):
        return evaluate_deterministic(strategy)
    if isinstance(strategy, LHVModel):
        return evaluate_lhv(strategy)
    return evaluate_quantum(strategy)


def _win_probabilities_per_question(strategy: QuantumStrategy) -> np.ndarray:
    """Born-rule P(win | x, y) as a 2x2 array."""
    table = np.zeros((2, 2))
    for x, y in QUESTIONS:
        outcomes = joint_outcomes(strategy, x, y)
        for i, j in product(range(2), range(2)):
            if winning_predicate(x, y, strategy.alice_answers[i], strategy.bob_answers[j]):
                table[x, y] += outcomes[i, j]
    return table


def _answer_indices(answers: Sequence[Answer]) -> np.ndarray:
    """Answer per sign index as a table index, 0 = yes."""
    return np.array([0 if answer is Answer.YES else 1 for answer in answers])


def _play_quantum(
    strategy: QuantumStrategy, x: np.ndarray, y: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Draw the joint sign outcome of each round from the Born rule and map it to answers."""
    joint = np.array(
        [[joint_outcomes(strategy, qx, qy).reshape(-1) for qy in (0, 1)] for qx in (0, 1)]
    )
    cumulative = np.cumsum(joint[x, y], axis=1)
    outcome = np.minimum((rng.random(x.size)[:, None] >= cumulative).sum(axis=1), 3)
    alice_signs, bob_signs = np.divmod(outcome, 2)
    return (
        _answer_indices(strategy.alice_answers)[alice_signs],
        _answer_indices(strategy.bob_answers)[bob_signs],
    )


def _play_local(
    model: LHVModel, x: np.ndarray, y: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Draw lambda from the weights, then each player's answer from its own table."""
    weights = np.clip(model.weights, 0.0, None)
    lam = rng.choice(weights.size, size=x.size, p=weights / weights.sum())
    alice = (rng.random(x.size) >= model.alice_yes[lam, x]).astype(int)
    bob = (rng.random(x.size) >= model.bob_yes[lam, y]).astype(int)
    return alice, bob


def simulate_game(
    strategy: GameStrategy, rounds: int, seed: int = DEFAULT_SEED
) -> SimulationResult:
    """Play rounds of the game with uniformly drawn questions.

    Each round samples the questions, then lambda (local strategies) or the joint
    measurement outcome (quantum strategies), then the answers, and scores them
    with winning_predicate. Rounds are drawn in chunks seeded seed + chunk_index,
    so the count of wins depends only on (strategy, rounds, seed).
    """
    if rounds < 1:
        raise InvalidParameterError(f"Need at least one round, got {rounds}")
    played: Union[QuantumStrategy, LHVModel] = (
        deterministic_as_lhv(strategy) if isinstance(strategy, DeterministicStrategy) else strategy
    )
    wins = 0
    for size, rng in chunked(seed, rounds):
        x = rng.integers(0, 2, size)
        y = rng.integers(0, 2, size)
        if isinstance(played, QuantumStrategy):
            a, b = _play_quantum(played, x, y, rng)
        else:
            a, b = _play_local(played, x, y, rng)
        wins += int(WIN_TABLE[x, y, a, b].sum())
    analytic = evaluate(strategy)
    sigma = math.sqrt(max(analytic * (1 - analytic), 0.0) / rounds)
    frequency = wins / rounds
    logger.info(f"Simulated {rounds} rounds: frequency {frequency:.6f}, analytic {analytic:.6f}")
    return SimulationResult(
        rounds=rounds, wins=wins, frequency=frequency, analytic=analytic, sigma=sigma
    )


def classical_bound_holds(value: float) -> bool:
    return value <= CLASSICAL_CHSH_BOUND + TOL_ALG
