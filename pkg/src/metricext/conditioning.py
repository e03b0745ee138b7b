"""Scale-invariant degeneracy test shared by bases, extensors and metrics."""

import numpy as np

DEGENERACY_RCOND = 1e-12


def reciprocal_condition(M) -> float:
    """``sigma_min / sigma_max`` of a square matrix; 0 for the zero matrix."""
    s = np.linalg.svd(np.asarray(M, dtype=float), compute_uv=False)
    return float(s[-1] / s[0]) if s[0] > 0 else 0.0


def is_degenerate(M, rcond: float = DEGENERACY_RCOND) -> bool:
    return reciprocal_condition(M) <= rcond
