"""Shared fixtures: seeded generators and quadrature oracles for closed-form checks."""

from typing import Callable

import numpy as np
import pytest
from scipy import integrate
from scipy.stats import multivariate_normal

from quantum_fragments.models.phase_space import GaussianMacrostate


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


def _box(state: GaussianMacrostate, width: float) -> np.ndarray:
    spread = np.sqrt(np.diag(state.cov))
    return np.stack([state.mean - width * spread, state.mean + width * spread], axis=-1)


@pytest.fixture
def fidelity_oracle() -> Callable[[GaussianMacrostate, GaussianMacrostate], float]:
    """Trapezoid integral of sqrt(f g) over a box covering both one-mode densities."""

    def oracle(f: GaussianMacrostate, g: GaussianMacrostate, points: int = 801) -> float:
        box_f, box_g = _box(f, 12.0), _box(g, 12.0)
        lower = np.minimum(box_f[:, 0], box_g[:, 0])
        upper = np.maximum(box_f[:, 1], box_g[:, 1])
        xs = np.linspace(lower[0], upper[0], points)
        ps = np.linspace(lower[1], upper[1], points)
        grid = np.stack(np.meshgrid(xs, ps, indexing="ij"), axis=-1)
        pdf_f = multivariate_normal(mean=f.mean, cov=f.cov).pdf(grid)
        pdf_g = multivariate_normal(mean=g.mean, cov=g.cov).pdf(grid)
        integrand = np.sqrt(pdf_f * pdf_g)
        return float(integrate.trapezoid(integrate.trapezoid(integrand, ps, axis=1), xs))

    return oracle


@pytest.fixture
def normalization_oracle() -> Callable[[Callable[[np.ndarray], float], GaussianMacrostate], float]:
    """Trapezoid integral of a one-mode density over a wide box around its mean."""

    def oracle(
        density: Callable[[np.ndarray], float], state: GaussianMacrostate, points: int = 401
    ) -> float:
        box = _box(state, 10.0)
        xs = np.linspace(box[0, 0], box[0, 1], points)
        ps = np.linspace(box[1, 0], box[1, 1], points)
        values = np.array([[density(np.array([x, p])) for p in ps] for x in xs])
        return float(integrate.trapezoid(integrate.trapezoid(values, ps, axis=1), xs))

    return oracle
