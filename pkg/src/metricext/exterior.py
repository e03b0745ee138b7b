"""
Exterior algebra over R^n.

Basis blades are stored as bit masks: bit ``i`` set means the fiducial
vector ``b_{i+1}`` is a factor, and factors are kept in ascending order.
The fiducial basis is the canonical coordinate basis, which is orthonormal
under the b-scalar product, so the scalar product of two vectors is the
Euclidean dot product of their coordinate arrays.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionCapError, DimensionMismatchError, SchemaError

MAX_DIM = 12


def check_dim(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise SchemaError(f"dimension must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise SchemaError(f"dimension must be >= 1, got {n}")
    if n > MAX_DIM:
        raise DimensionCapError(f"dimension {n} exceeds cap {MAX_DIM}")
    return n


def same_dim(a, b) -> int:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return a.dim


def grade_of(mask: int) -> int:
    return mask.bit_count()


def reorder_sign(a: int, b: int) -> int:
    """Sign picked up when sorting the concatenated factors of blades ``a`` then ``b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


class CoordinateArray:
    """Immutable coordinate array shared by vectors and forms.

    Arithmetic is only defined between instances of the same concrete type,
    so a Vector never silently mixes with a Form.
    """

    __slots__ = ("_coords",)

    def __init__(self, coords):
        arr = np.array(coords, dtype=float).reshape(-1)
        if arr.size == 0:
            raise SchemaError("coordinate array must be non-empty")
        check_dim(arr.size)
        if not np.all(np.isfinite(arr)):
            raise SchemaError("coordinates must be finite")
        arr.setflags(write=False)
        self._coords = arr

    @classmethod
    def unit(cls, n: int, k: int):
        """The k-th fiducial element (0-based), e.g. ``Vector.unit(3, 0)`` is b_1."""
        n = check_dim(n)
        if not 0 <= k < n:
            raise SchemaError(f"index {k} out of range for dimension {n}")
        c = np.zeros(n)
        c[k] = 1.0
        return cls(c)

    @classmethod
    def zero(cls, n: int):
        return cls(np.zeros(check_dim(n)))

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def dim(self) -> int:
        return self._coords.size

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        same_dim(self, other)
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self._coords + other._coords)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(self._coords - other._coords)

    def __neg__(self):
        return type(self)(-self._coords)

    def __mul__(self, alpha):
        if not isinstance(alpha, (int, float, np.floating, np.integer)):
            return NotImplemented
        return type(self)(self._coords * float(alpha))

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self._coords, other._coords))

    def __hash__(self):
        return hash((type(self).__name__, self._coords.tobytes()))

    def __len__(self):
        return self.dim

    def __repr__(self):
        return f"{type(self).__name__}({self._coords.tolist()})"


class Vector(CoordinateArray):
    """Element of V, stored by its coordinates in the fiducial basis {b_k}."""

    __slots__ = ()

    def dot(self, other: "Vector") -> float:
        if not isinstance(other, Vector):
            raise TypeError("b-scalar product of vectors needs two Vectors")
        same_dim(self, other)
        return float(self._coords @ other._coords)


class Multivector:
    """Element of the exterior algebra, a sparse map from blade masks to coefficients."""

    __slots__ = ("_dim", "_coeffs")

    def __init__(self, dim: int, coeffs: Mapping[int, float] | None = None):
        self._dim = check_dim(dim)
        full = 1 << self._dim
        clean = {}
        for mask, c in (coeffs or {}).items():
            mask = int(mask)
            if not 0 <= mask < full:
                raise SchemaError(f"blade mask {mask} out of range for dimension {dim}")
            c = float(c)
            if not np.isfinite(c):
                raise SchemaError("multivector coefficients must be finite")
            if c != 0.0:
                clean[mask] = c
        self._coeffs = clean

    @classmethod
    def scalar(cls, dim: int, value: float = 1.0) -> "Multivector":
        return cls(dim, {0: value})

    @classmethod
    def blade(cls, dim: int, indices: Iterable[int], coeff: float = 1.0) -> "Multivector":
        """Blade ``b_{i1} ^ ... ^ b_{ik}`` from 0-based indices in the given order."""
        result = cls.scalar(dim, coeff)
        for i in indices:
            result = wedge(result, Vector.unit(dim, i))
        return result

    @classmethod
    def from_vector(cls, v: Vector) -> "Multivector":
        return cls(v.dim, {1 << i: c for i, c in enumerate(v.coords)})

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def coeff(self, mask: int) -> float:
        return self._coeffs.get(mask, 0.0)

    def grades(self) -> set:
        return {grade_of(m) for m in self._coeffs}

    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def __iter__(self):
        return iter(sorted(self._coeffs.items()))

    def __add__(self, other):
        other = _as_multivector(other, self._dim)
        if other is NotImplemented:
            return NotImplemented
        same_dim(self, other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0.0) + c
        return Multivector(self._dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self._dim, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        other = _as_multivector(other, self._dim)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, alpha):
        if not isinstance(alpha, (int, float, np.floating, np.integer)):
            return NotImplemented
        return Multivector(self._dim, {m: c * float(alpha) for m, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __rxor__(self, other):
        return wedge(other, self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._dim == other._dim and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._dim, tuple(sorted(self._coeffs.items()))))

    def allclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        same_dim(self, other)
        masks = set(self._coeffs) | set(other._coeffs)
        return all(abs(self.coeff(m) - other.coeff(m)) <= atol for m in masks)

    def __repr__(self):
        if not self._coeffs:
            return f"Multivector({self._dim}, 0)"
        terms = []
        for m, c in self:
            name = "^".join(f"b{i + 1}" for i in range(self._dim) if m >> i & 1) or "1"
            terms.append(f"{c!r}*{name}")
        return f"Multivector({self._dim}, {' + '.join(terms)})"


def _as_multivector(x, dim=None):
    if isinstance(x, Multivector):
        return x
    if isinstance(x, Vector):
        return Multivector.from_vector(x)
    if dim is not None and isinstance(x, (int, float, np.floating, np.integer)):
        return Multivector.scalar(dim, float(x))
    return NotImplemented


def _coerce(x) -> Multivector:
    mv = _as_multivector(x)
    if mv is NotImplemented:
        raise TypeError(f"expected a Multivector or Vector, got {type(x).__name__}")
    return mv


def wedge(A, B) -> Multivector:
    """Exterior product of two multivectors (vectors are promoted to grade 1)."""
    A, B = _coerce(A), _coerce(B)
    n = same_dim(A, B)
    out: dict[int, float] = {}
    for ma, ca in A._coeffs.items():
        for mb, cb in B._coeffs.items():
            if ma & mb:
                continue
            m = ma | mb
            out[m] = out.get(m, 0.0) + reorder_sign(ma, mb) * ca * cb
    return Multivector(n, out)


def wedge_vectors(vectors) -> Multivector:
    """``v_1 ^ ... ^ v_k`` for a non-empty sequence of vectors."""
    vectors = list(vectors)
    if not vectors:
        raise SchemaError("wedge_vectors needs at least one vector")
    result = Multivector.from_vector(vectors[0])
    for v in vectors[1:]:
        result = wedge(result, v)
    return result


def blade_scalar_product(A, B) -> float:
    """Scalar product extended to the whole exterior algebra.

    On decomposable k-vectors this is the Gram determinant ``det[v_i . w_j]``.
    Distinct fiducial blades are orthogonal and each has unit norm, so the
    product reduces to summing coefficient products over shared masks.
    """
    A, B = _coerce(A), _coerce(B)
    same_dim(A, B)
    if len(A._coeffs) > len(B._coeffs):
        A, B = B, A
    return float(sum(c * B._coeffs.get(m, 0.0) for m, c in A._coeffs.items()))


def pseudoscalar(dim: int) -> Multivector:
    n = check_dim(dim)
    return Multivector(n, {(1 << n) - 1: 1.0})


def grade_project(A, k: int) -> Multivector:
    A = _coerce(A)
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 0 <= k <= A.dim:
        raise SchemaError(f"grade {k!r} out of range 0..{A.dim}")
    return Multivector(A.dim, {m: c for m, c in A._coeffs.items() if grade_of(m) == k})
