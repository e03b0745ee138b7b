"""Seeded random instances for the identity checks.

Entries are drawn uniform in [-1, 1]. Bases and invertible matrices are
redrawn until their 2-norm condition number is at most ``max_cond``.
"""

from __future__ import annotations

import numpy as np

from .dual import Basis, Form, make_basis
from .exterior import Vector
from .extensor import Extensor11, Tensor2
from .metric import MetricExtensor

MAX_COND = 1e6
_MAX_DRAWS = 10_000


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def uniform_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=(n, n))


def _conditioned(draw, max_cond: float) -> np.ndarray:
    for _ in range(_MAX_DRAWS):
        M = draw()
        if np.linalg.cond(M) <= max_cond:
            return M
    raise RuntimeError(f"no draw with condition number <= {max_cond} after {_MAX_DRAWS} attempts")


def well_conditioned_matrix(rng, n: int, max_cond: float = MAX_COND) -> np.ndarray:
    return _conditioned(lambda: uniform_matrix(rng, n), max_cond)


def symmetric_matrix(rng, n: int, max_cond: float | None = None) -> np.ndarray:
    def draw():
        A = uniform_matrix(rng, n)
        return np.triu(A) + np.triu(A, 1).T
    return draw() if max_cond is None else _conditioned(draw, max_cond)


def skew_matrix(rng, n: int) -> np.ndarray:
    A = np.triu(uniform_matrix(rng, n), 1)
    return A - A.T


def random_basis(rng, n: int, max_cond: float = MAX_COND) -> Basis:
    return make_basis(well_conditioned_matrix(rng, n, max_cond))


def random_vector(rng, n: int) -> Vector:
    return Vector(rng.uniform(-1.0, 1.0, size=n))


def random_form(rng, n: int) -> Form:
    return Form(rng.uniform(-1.0, 1.0, size=n))


def random_tensor(rng, n: int, basis: Basis | None = None) -> Tensor2:
    return Tensor2(uniform_matrix(rng, n), basis)


def random_extensor(rng, n: int) -> Extensor11:
    return Extensor11(uniform_matrix(rng, n))


def random_invertible_extensor(rng, n: int, max_cond: float = MAX_COND) -> Extensor11:
    return Extensor11(well_conditioned_matrix(rng, n, max_cond))


def random_metric_extensor(rng, n: int, max_cond: float = MAX_COND) -> MetricExtensor:
    return MetricExtensor(symmetric_matrix(rng, n, max_cond))
