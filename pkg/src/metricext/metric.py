"""
Metric tensors, metric extensors and the metric isomorphism V <-> V*.

The production path for the metric isomorphism is the factored form
``iota_G = iota o g`` with inverse ``g^-1 o iota^-1``. The component formulas
``iota_G(v) = G_jk eps^j(v) eps^k`` and ``iota_G^-1(w) = G^jk w(e_j) e_k``
are kept as an independent, basis-dependent verification path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .conditioning import is_degenerate
from .dual import Basis, Form, canonical_basis, standard_iso, standard_iso_inv
from .errors import AsymmetricMetricError, DegenerateError, InternalConsistencyError, SingularMatrixError
from .exterior import Vector, same_dim
from .extensor import (
    Extensor11,
    Tensor2,
    apply,
    det,
    from_tensor,
    inverse,
    is_symmetric,
    to_tensor,
)

METRIC_SYMMETRY_RTOL = 1e-12
INVERSE_CHECK_TOL = 1e-9


def _classical_det(M: np.ndarray) -> float:
    if M.shape[0] <= oracle.LEIBNIZ_MAX_DIM:
        return oracle.leibniz_det(M)
    return oracle.pivot_det(M)


class MetricTensor(Tensor2):
    """A symmetric, non-degenerate covariant 2-tensor.

    Symmetry is checked exactly. Pass ``symmetrize=True`` to replace the
    components by ``(G + G^T) / 2`` instead of rejecting them.

    A metric tensor deliberately has no inverse operation; the inverse lives
    on :class:`MetricExtensor`.
    """

    __slots__ = ()

    def __init__(self, components, basis: Basis | None = None, symmetrize: bool = False):
        G = np.array(components, dtype=float)
        if symmetrize and G.ndim == 2 and G.shape[0] == G.shape[1]:
            G = (G + G.T) / 2
        super().__init__(G, basis)
        if not self.is_symmetric():
            gap = float(np.abs(self.components - self.components.T).max())
            raise AsymmetricMetricError(f"metric components are not symmetric (max |G_jk - G_kj| = {gap!r})")
        d = _classical_det(self.components)
        if d == 0.0 or is_degenerate(self.components):
            raise DegenerateError(f"metric is degenerate (det[G_jk] = {d!r})", value=d)


class MetricExtensor(Extensor11):
    """A symmetric, non-degenerate (1,1)-extensor with its inverse cached."""

    __slots__ = ("_inverse",)

    def __init__(self, matrix, rtol: float = METRIC_SYMMETRY_RTOL):
        if isinstance(matrix, Extensor11):
            matrix = matrix.matrix
        super().__init__(matrix)
        if not is_symmetric(self, rtol=rtol, atol=0.0):
            raise AsymmetricMetricError("metric extensor is not adjoint-symmetric")
        try:
            inv = inverse(Extensor11(self.matrix))
        except SingularMatrixError as exc:
            raise DegenerateError(f"metric extensor is degenerate ({exc})", value=exc.value) from exc
        residual = float(np.abs(self.matrix @ inv.matrix - np.eye(self.dim)).max())
        if residual > INVERSE_CHECK_TOL:
            raise InternalConsistencyError(f"cached inverse fails g o g^-1 = id (residual {residual!r})")
        self._inverse = inv

    @property
    def inverse_extensor(self) -> Extensor11:
        return self._inverse

    @property
    def det(self) -> float:
        return det(self)


@dataclass(frozen=True)
class ContravariantMetric:
    """``G*(w, s) = G^jk w(e_j) s(e_k)`` with ``G^jk`` the inverse matrix of ``G_jk``."""

    components: np.ndarray
    basis: Basis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def __call__(self, omega: Form, sigma: Form) -> float:
        left = np.array([omega(e) for e in self.basis.vectors])
        right = np.array([sigma(e) for e in self.basis.vectors])
        return float(left @ self.components @ right)


def metric_extensor_from_tensor(G: MetricTensor) -> MetricExtensor:
    """g with ``G(v, w) = g(v) . w``."""
    if not isinstance(G, MetricTensor):
        G = MetricTensor(G.components, G.basis)
    return MetricExtensor(from_tensor(G))


def contravariant_metric(G: MetricTensor) -> ContravariantMetric:
    if not isinstance(G, MetricTensor):
        G = MetricTensor(G.components, G.basis)
    try:
        inv = oracle.gauss_inverse(G.components)
    except SingularMatrixError as exc:
        raise DegenerateError(f"metric is degenerate ({exc})", value=exc.value) from exc
    inv.setflags(write=False)
    return ContravariantMetric(inv, G.basis)


def metric_iso(g: MetricExtensor, v: Vector) -> Form:
    """``iota_G(v) = iota(g(v))``."""
    return standard_iso(apply(g, v))


def metric_iso_inv(g: MetricExtensor, omega: Form) -> Vector:
    """``iota_G^-1(w) = g^-1(iota^-1(w))``."""
    same_dim(g, omega)
    return apply(g.inverse_extensor, standard_iso_inv(omega))


def metric_iso_components(G: Tensor2, v: Vector) -> Form:
    """Component formula ``iota_G(v) = G_jk eps^j(v) eps^k``."""
    b = G.basis
    coeffs = b.components(v) @ G.components
    return Form(coeffs @ b.dual_matrix)


def metric_iso_inv_components(Gstar: ContravariantMetric, omega: Form) -> Vector:
    """Component formula ``iota_G^-1(w) = G^jk w(e_j) e_k``."""
    b = Gstar.basis
    values = np.array([omega(e) for e in b.vectors])
    return Vector((values @ Gstar.components) @ b.matrix)


@dataclass(frozen=True)
class FactorizationReport:
    """Worst-case gap between the component path and the factored path.

    ``forward``/``inverse`` are absolute max-norm residuals; the ``_relative``
    fields divide each sample's residual by ``max(1, |factored result|)``.
    """

    forward: float
    inverse: float
    forward_relative: float
    inverse_relative: float
    vectors: int
    forms: int

    def as_dict(self) -> dict:
        return {
            "eq-3.3.1": self.forward,
            "eq-3.3.2": self.inverse,
            "eq-3.3.1-relative": self.forward_relative,
            "eq-3.3.2-relative": self.inverse_relative,
            "vectors": self.vectors,
            "forms": self.forms,
        }


def _gap(lhs, rhs):
    diff = float(np.abs(lhs.coords - rhs.coords).max())
    return diff, diff / max(1.0, float(np.abs(rhs.coords).max()))


def factorization_residuals(g: MetricExtensor, vectors, forms, basis: Basis | None = None) -> FactorizationReport:
    """Compare ``iota_G`` and ``iota_G^-1`` computed from components on ``basis``
    against ``iota o g`` and ``g^-1 o iota^-1``, over the sample vectors and forms."""
    if basis is None:
        basis = canonical_basis(g.dim)
    G = to_tensor(g, basis)
    Gstar = ContravariantMetric(oracle.gauss_inverse(G.components), basis)
    fwd = [_gap(metric_iso_components(G, v), metric_iso(g, v)) for v in vectors]
    back = [_gap(metric_iso_inv_components(Gstar, w), metric_iso_inv(g, w)) for w in forms]
    return FactorizationReport(
        forward=max((a for a, _ in fwd), default=0.0),
        inverse=max((a for a, _ in back), default=0.0),
        forward_relative=max((r for _, r in fwd), default=0.0),
        inverse_relative=max((r for _, r in back), default=0.0),
        vectors=len(fwd),
        forms=len(back),
    )


def inverse_metric_extensor(g: MetricExtensor, rtol: float = INVERSE_CHECK_TOL) -> MetricExtensor:
    """g^-1 repackaged as a MetricExtensor, with symmetry and non-degeneracy re-checked."""
    try:
        return MetricExtensor(g.inverse_extensor, rtol=rtol)
    except (AsymmetricMetricError, DegenerateError) as exc:
        raise InternalConsistencyError(f"inverse of a metric extensor failed validation: {exc}") from exc
