"""
(1,1)-extensors and their correspondence with covariant 2-tensors.

An Extensor11 is a linear map V -> V stored as the matrix whose column j is
the fiducial coordinate array of t(b_j). Determinants are computed the
exterior-algebra way, from the action of the outermorphism on the
pseudoscalar; the Leibniz formula lives only in :mod:`metricext.oracle`.
"""

from __future__ import annotations

import numpy as np

from .conditioning import is_degenerate
from .dual import Basis, canonical_basis
from .errors import DimensionMismatchError, SchemaError, SingularMatrixError
from .exterior import Multivector, Vector, check_dim, pseudoscalar, same_dim, wedge

SYMMETRY_RTOL = 1e-9
SYMMETRY_ATOL = 1e-12


def _square(M, n=None) -> np.ndarray:
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise SchemaError(f"expected a square matrix, got shape {A.shape}")
    check_dim(A.shape[0])
    if n is not None and A.shape[0] != n:
        raise DimensionMismatchError(f"matrix is {A.shape[0]}x{A.shape[0]}, basis has dimension {n}")
    if not np.all(np.isfinite(A)):
        raise SchemaError("matrix entries must be finite")
    A.setflags(write=False)
    return A


class Tensor2:
    """Covariant 2-tensor given by its components ``T_jk = T(e_j, e_k)`` on a basis."""

    __slots__ = ("components", "basis")

    def __init__(self, components, basis: Basis | None = None):
        comps = _square(components)
        if basis is None:
            basis = canonical_basis(comps.shape[0])
        elif basis.dim != comps.shape[0]:
            raise DimensionMismatchError(
                f"components are {comps.shape[0]}x{comps.shape[0]}, basis has dimension {basis.dim}"
            )
        self.components = comps
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.dim

    def __call__(self, v: Vector, w: Vector) -> float:
        """``T(v, w) = T_jk eps^j(v) eps^k(w)``."""
        same_dim(self, v)
        same_dim(self, w)
        return float(self.basis.components(v) @ self.components @ self.basis.components(w))

    def pairings(self, left, right) -> np.ndarray:
        """Matrix ``[T(l_i, r_k)]`` for sequences of vectors ``left`` and ``right``."""
        F = self.basis.dual_matrix
        L = np.array([v.coords for v in left]) @ F.T
        R = np.array([v.coords for v in right]) @ F.T
        return L @ self.components @ R.T

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.components, self.components.T))

    def __repr__(self):
        return f"Tensor2({self.components.tolist()}, {self.basis!r})"


class Extensor11:
    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = _square(matrix)

    @classmethod
    def identity(cls, n: int) -> "Extensor11":
        return cls(np.eye(check_dim(n)))

    @classmethod
    def zero(cls, n: int) -> "Extensor11":
        return cls(np.zeros((check_dim(n), check_dim(n))))

    @classmethod
    def from_images(cls, images) -> "Extensor11":
        """Extensor sending b_j to ``images[j]``."""
        return cls(np.array([v.coords for v in images]).T)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v: Vector) -> Vector:
        return apply(self, v)

    def __matmul__(self, other):
        """Composition ``self o other``."""
        if not isinstance(other, Extensor11):
            return NotImplemented
        same_dim(self, other)
        return Extensor11(self.matrix @ other.matrix)

    def __add__(self, other):
        if not isinstance(other, Extensor11):
            return NotImplemented
        same_dim(self, other)
        return Extensor11(self.matrix + other.matrix)

    def __sub__(self, other):
        if not isinstance(other, Extensor11):
            return NotImplemented
        same_dim(self, other)
        return Extensor11(self.matrix - other.matrix)

    def __neg__(self):
        return Extensor11(-self.matrix)

    def __mul__(self, alpha):
        if not isinstance(alpha, (int, float, np.floating, np.integer)):
            return NotImplemented
        return Extensor11(self.matrix * float(alpha))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Extensor11):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __repr__(self):
        return f"{type(self).__name__}({self.matrix.tolist()})"


def apply(t: Extensor11, v: Vector) -> Vector:
    if not isinstance(v, Vector):
        raise TypeError("extensors act on Vectors")
    same_dim(t, v)
    return Vector(t.matrix @ v.coords)


def from_tensor(T: Tensor2, via: str = "reciprocal") -> Extensor11:
    """The unique extensor t with ``T(v, w) = t(v) . w``.

    ``via="reciprocal"`` builds ``t(v) = T(v, e_k) e^k``; ``via="basis"``
    builds ``t(v) = T(v, e^k) e_k``. Both give the same extensor.
    """
    n = T.dim
    fiducial = [Vector.unit(n, i) for i in range(n)]
    b = T.basis
    if via == "reciprocal":
        values = T.pairings(fiducial, b.vectors)       # [T(b_i, e_k)]
        partners = b.reciprocal_matrix                  # rows e^k
    elif via == "basis":
        values = T.pairings(fiducial, b.reciprocal_vectors)  # [T(b_i, e^k)]
        partners = b.matrix                                  # rows e_k
    else:
        raise ValueError(f"unknown construction {via!r}; use 'reciprocal' or 'basis'")
    # column i is t(b_i) = sum_k values[i, k] * partner_k
    return Extensor11(partners.T @ values.T)


def to_tensor(t: Extensor11, basis: Basis) -> Tensor2:
    """Components ``T_jk = t(e_j) . e_k``."""
    if t.dim != basis.dim:
        raise DimensionMismatchError(f"extensor dimension {t.dim} vs basis dimension {basis.dim}")
    E = basis.matrix
    images = E @ t.matrix.T
    return Tensor2(images @ E.T, basis)


def adjoint(t: Extensor11) -> Extensor11:
    # the fiducial basis is b-orthonormal, so t(v).w = v.t^dagger(w) is the transpose
    return Extensor11(t.matrix.T)


def outermorphism(t: Extensor11, A) -> Multivector:
    """Grade-preserving extension ``t(v_1 ^ ... ^ v_k) = t(v_1) ^ ... ^ t(v_k)``."""
    if isinstance(A, Vector):
        A = Multivector.from_vector(A)
    if not isinstance(A, Multivector):
        raise TypeError("outermorphism acts on Multivectors")
    n = same_dim(t, A)
    images = [t.matrix[:, i] for i in range(n)]
    result = Multivector(n)
    for mask, c in A:
        factors = _deflate([images[i] for i in range(n) if mask >> i & 1])
        term = Multivector.scalar(n, c)
        for w in factors:
            term = wedge(term, Vector(w))
        result = result + term
    return result


def _deflate(factors):
    """Replace each factor by its part orthogonal to the earlier ones.

    ``v ^ (w + a v) = v ^ w`` leaves the wedge unchanged, while orthogonal
    factors keep its expansion free of cancellation.
    """
    out = []
    basis = []
    for f in factors:
        w = np.array(f, dtype=float)
        for q in basis:
            w = w - (q @ w) * q
        norm = np.linalg.norm(w)
        out.append(w)
        if norm == 0.0:
            # rank-deficient: the wedge is zero whatever comes next
            return [np.zeros_like(w) for _ in factors]
        basis.append(w / norm)
    return out


def det(t: Extensor11) -> float:
    """The scalar with ``t(I) = det[t] I`` on the pseudoscalar."""
    n = t.dim
    return outermorphism(t, pseudoscalar(n)).coeff((1 << n) - 1)


def is_invertible(t: Extensor11) -> bool:
    return det(t) != 0.0 and not is_degenerate(t.matrix)


def inverse(t: Extensor11) -> Extensor11:
    """Two-sided inverse, computed by LU with partial pivoting on the fiducial matrix."""
    d = det(t)
    if d == 0.0 or is_degenerate(t.matrix):
        raise SingularMatrixError(f"extensor is singular (det[t] = {d!r})", value=d)
    return Extensor11(np.linalg.solve(t.matrix, np.eye(t.dim)))


def classical_det_of_components(T: Tensor2) -> float:
    """``det[T_jk]`` obtained as ``det[t] (e_1^...^e_n).(e_1^...^e_n)``."""
    return det(from_tensor(T)) * T.basis.pseudoscalar_norm()


def inverse_components(t: Extensor11, basis: Basis) -> np.ndarray:
    """``T^jk = t^-1(e^j) . e^k``, the inverse of the component matrix of t."""
    if t.dim != basis.dim:
        raise DimensionMismatchError(f"extensor dimension {t.dim} vs basis dimension {basis.dim}")
    ti = inverse(t)
    R = basis.reciprocal_matrix
    return (R @ ti.matrix.T) @ R.T


def _matches(A: np.ndarray, B: np.ndarray, rtol: float, atol: float) -> bool:
    scale = max(np.abs(A).max(), np.abs(B).max())
    return bool(np.abs(A - B).max() <= atol + rtol * scale)


def is_symmetric(t: Extensor11, rtol: float = SYMMETRY_RTOL, atol: float = SYMMETRY_ATOL) -> bool:
    return _matches(t.matrix, adjoint(t).matrix, rtol, atol)


def is_skew(t: Extensor11, rtol: float = SYMMETRY_RTOL, atol: float = SYMMETRY_ATOL) -> bool:
    return _matches(t.matrix, -adjoint(t).matrix, rtol, atol)
