"""
Seeded identity suite.

Every check compares two independently computed quantities and passes when
``residual <= atol + rtol * scale``, where ``scale`` is ``max(1, |expected|)``.
Tags name the identity being checked (e.g. ``eq-3.2.1`` for the determinant
relation between tensor components and the extensor determinant).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import oracle
from . import sampling as S
from .dual import (
    Form,
    apply_form,
    b_dot_forms,
    b_dot_vectors,
    standard_iso,
    standard_iso_inv,
)
from .exterior import Vector, check_dim
from .extensor import (
    Tensor2,
    det,
    from_tensor,
    inverse_components,
    is_skew,
    is_symmetric,
    to_tensor,
)
from .errors import InternalConsistencyError
from .metric import (
    factorization_residuals,
    inverse_metric_extensor,
    metric_iso,
    metric_iso_inv,
)

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 20


@dataclass(frozen=True)
class Check:
    identity: str
    description: str
    residual: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


class Tolerance:
    def __init__(self, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL):
        self.rtol = rtol
        self.atol = atol

    def bound(self, scale: float) -> float:
        return self.atol + self.rtol * max(1.0, float(scale))

    def check(self, identity: str, description: str, residual: float, scale: float = 1.0) -> Check:
        tol = self.bound(scale)
        residual = float(residual)
        return Check(identity, description, residual, tol, bool(residual <= tol))


def classical_det(M: np.ndarray) -> float:
    if M.shape[0] <= oracle.LEIBNIZ_MAX_DIM:
        return oracle.leibniz_det(M)
    return oracle.pivot_det(M)


def _max_abs(A) -> float:
    A = np.asarray(A, dtype=float)
    return float(np.abs(A).max()) if A.size else 0.0


class _Worst:
    """Track the largest residual relative to its tolerance."""

    def __init__(self, tol: Tolerance):
        self.tol = tol
        self.residual = 0.0
        self.scale = 1.0
        self._ratio = -1.0

    def add(self, residual: float, scale: float = 1.0):
        bound = self.tol.bound(scale)
        if bound > 0.0:
            ratio = residual / bound
        else:
            ratio = float("inf") if residual > 0.0 else 0.0
        if ratio > self._ratio:
            self._ratio = ratio
            self.residual = float(residual)
            self.scale = float(scale)

    def result(self, identity: str, description: str) -> Check:
        return self.tol.check(identity, description, self.residual, self.scale)


def run_suite(n: int, seed: int = DEFAULT_SEED, samples: int = DEFAULT_SAMPLES,
              rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL,
              max_cond: float = S.MAX_COND) -> list[Check]:
    """Run every identity on ``samples`` seeded random instances of dimension ``n``."""
    n = check_dim(n)
    tol = Tolerance(rtol, atol)
    rng = S.rng_for(seed)
    eye = np.eye(n)
    checks: list[Check] = []

    # standard isomorphism and b-scalar products
    w_fwd, w_back = _Worst(tol), _Worst(tol)
    for _ in range(samples):
        v, omega = S.random_vector(rng, n), S.random_form(rng, n)
        w_fwd.add(_max_abs(standard_iso_inv(standard_iso(v)).coords - v.coords))
        w_back.add(_max_abs(standard_iso(standard_iso_inv(omega)).coords - omega.coords))
    checks.append(w_fwd.result("eq-3.1a", "iota^-1 o iota = id on V"))
    checks.append(w_back.result("eq-3.1b", "iota o iota^-1 = id on V*"))

    fid_v = [Vector.unit(n, k) for k in range(n)]
    fid_f = [Form.unit(n, k) for k in range(n)]
    g_v = np.array([[b_dot_vectors(a, b) for b in fid_v] for a in fid_v])
    g_f = np.array([[b_dot_forms(a, b) for b in fid_f] for a in fid_f])
    checks.append(tol.check("eq-3.1.2a", "b_j . b_k = delta_jk", _max_abs(g_v - eye)))
    checks.append(tol.check("eq-3.1.2b", "beta^j . beta^k = delta^jk", _max_abs(g_f - eye)))

    # reciprocal bases
    w5, w6, w7 = _Worst(tol), _Worst(tol), _Worst(tol)
    bases = [S.random_basis(rng, n, max_cond) for _ in range(samples)]
    for b in bases:
        w5.add(_max_abs([[b_dot_vectors(ek, el) for el in b.reciprocal_vectors] for ek in b.vectors] - eye))
        w6.add(_max_abs([[b_dot_forms(ek, el) for el in b.reciprocal_forms] for ek in b.dual_forms] - eye))
        w7.add(_max_abs([[apply_form(ek, ej) for ej in b.reciprocal_vectors] for ek in b.reciprocal_forms] - eye))
    checks.append(w5.result("eq-3.1.5", "e_k . e^l = delta_k^l"))
    checks.append(w6.result("eq-3.1.6", "eps^k . eps_l = delta_l^k"))
    checks.append(w7.result("eq-3.1.7", "eps_k(e^j) = delta_k^j"))

    # tensor <-> extensor
    w_comp, w_var, w_round = _Worst(tol), _Worst(tol), _Worst(tol)
    w_det = _Worst(tol)
    for b in bases:
        T = S.random_tensor(rng, n, b)
        t = from_tensor(T)
        scale = _max_abs(T.components)
        w_comp.add(_max_abs(to_tensor(t, b).components - T.components), scale)
        w_var.add(_max_abs(t.matrix - from_tensor(T, via="basis").matrix), _max_abs(t.matrix))
        u = S.random_extensor(rng, n)
        w_round.add(_max_abs(from_tensor(to_tensor(u, b)).matrix - u.matrix), _max_abs(u.matrix))
        classical = classical_det(T.components)
        w_det.add(abs(classical - det(t) * b.pseudoscalar_norm()), abs(classical))
    checks.append(w_comp.result("eq-3.2", "T_jk = t(e_j) . e_k for t from T"))
    checks.append(w_var.result("eq-3.2-variants", "T(v,e_k) e^k and T(v,e^k) e_k give the same t"))
    checks.append(w_round.result("eq-3.2-roundtrip", "from_tensor o to_tensor = id"))
    checks.append(w_det.result("eq-3.2.1", "det[T_jk] = det[t] (e_1^..^e_n).(e_1^..^e_n)"))

    wrong_sym = wrong_skew = 0
    for b in bases:
        A = S.symmetric_matrix(rng, n)
        K = S.skew_matrix(rng, n)
        wrong_sym += not is_symmetric(from_tensor(Tensor2(A, b)), rtol, atol)
        wrong_sym += is_skew(from_tensor(Tensor2(A, b)), rtol, atol)
        wrong_skew += not is_skew(from_tensor(Tensor2(K, b)), rtol, atol)
    checks.append(Check("eq-3.2.0a", "T symmetric <=> t = t^dagger (misclassified count)",
                        float(wrong_sym), 0.0, wrong_sym == 0))
    checks.append(Check("eq-3.2.0b", "T skew <=> t = -t^dagger (misclassified count)",
                        float(wrong_skew), 0.0, wrong_skew == 0))

    w_inv, w_orc = _Worst(tol), _Worst(tol)
    for b in bases:
        t = S.random_invertible_extensor(rng, n, max_cond)
        lower = to_tensor(t, b).components
        upper = inverse_components(t, b)
        w_inv.add(max(_max_abs(upper @ lower - eye), _max_abs(lower @ upper - eye)))
        ref = oracle.gauss_inverse(lower)
        w_orc.add(_max_abs(upper - ref), _max_abs(ref))
    checks.append(w_inv.result("eq-3.2.2", "T^js T_sk = delta_k^j and T_js T^sk = delta_j^k"))
    checks.append(w_orc.result("eq-3.2.2-oracle", "T^jk equals the Gaussian inverse of T_jk"))

    # metric isomorphism
    w_a, w_f, w_b, w_rt, w_cl = (_Worst(tol) for _ in range(5))
    closure_ok = True
    for b in bases:
        g = S.random_metric_extensor(rng, n, max_cond)
        G = to_tensor(g, b)
        v, w = S.random_vector(rng, n), S.random_vector(rng, n)
        gv = G(v, w)
        w_a.add(abs(metric_iso(g, v)(w) - gv), abs(gv))
        rep = factorization_residuals(g, [v, w], [S.random_form(rng, n)], b)
        w_f.add(rep.forward_relative)
        w_b.add(rep.inverse_relative)
        w_rt.add(_max_abs(metric_iso_inv(g, metric_iso(g, v)).coords - v.coords), _max_abs(v.coords))
        try:
            gi = inverse_metric_extensor(g)
            gii = inverse_metric_extensor(gi)
            w_cl.add(_max_abs(gii.matrix - g.matrix), _max_abs(g.matrix))
        except InternalConsistencyError:
            closure_ok = False
    checks.append(w_a.result("eq-3.3a", "iota_G(v)(w) = G(v,w)"))
    checks.append(w_f.result("eq-3.3.1", "G_jk eps^j(v) eps^k = iota(g(v)), relative"))
    checks.append(w_b.result("eq-3.3.2", "G^jk w(e_j) e_k = g^-1(iota^-1(w)), relative"))
    checks.append(w_rt.result("eq-3.3-roundtrip", "iota_G^-1 o iota_G = id on V"))
    closure = w_cl.result("closure", "g^-1 is a metric extensor and (g^-1)^-1 = g")
    if not closure_ok:
        closure = Check(closure.identity, closure.description, float("inf"), closure.tolerance, False)
    checks.append(closure)
    return checks
