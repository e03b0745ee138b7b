"""
Forms, the standard isomorphism between V and V*, and b-reciprocal bases.

A Form is stored by its coefficients in the dual fiducial basis {beta^k},
so ``omega(b_k) == omega.coords[k]``. Because vectors and forms share this
coordinate representation, the standard isomorphism keeps the coordinate
array and only changes the type.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import oracle
from .conditioning import is_degenerate
from .errors import DegenerateError, SchemaError, SingularMatrixError
from .exterior import (
    CoordinateArray,
    Vector,
    blade_scalar_product,
    check_dim,
    pseudoscalar,
    same_dim,
    wedge_vectors,
)

class Form(CoordinateArray):
    """Element of V*, stored by its coefficients in {beta^k}."""

    __slots__ = ()

    def __call__(self, v: Vector) -> float:
        return apply_form(self, v)


def apply_form(omega: Form, v: Vector) -> float:
    if not isinstance(omega, Form) or not isinstance(v, Vector):
        raise TypeError("apply_form expects (Form, Vector)")
    same_dim(omega, v)
    return float(omega.coords @ v.coords)


def standard_iso(v: Vector) -> Form:
    """``iota(v) = sum_k beta^k(v) beta^k``."""
    if not isinstance(v, Vector):
        raise TypeError("standard_iso expects a Vector")
    return Form(v.coords)


def standard_iso_inv(omega: Form) -> Vector:
    """``iota^-1(omega) = sum_k omega(b_k) b_k``."""
    if not isinstance(omega, Form):
        raise TypeError("standard_iso_inv expects a Form")
    return Vector(omega.coords)


def b_dot_vectors(v: Vector, w: Vector) -> float:
    return apply_form(standard_iso(v), w)


def b_dot_forms(omega: Form, sigma: Form) -> float:
    return apply_form(sigma, standard_iso_inv(omega))


class Basis:
    """An ordered basis {e_k} of V with its dual and b-reciprocal companions.

    Attributes:
        vectors: e_1..e_n
        dual_forms: eps^1..eps^n with eps^k(e_j) = delta_j^k
        reciprocal_vectors: e^k = iota^-1(eps^k), so e_k . e^l = delta_k^l
        reciprocal_forms: eps_k = iota(e_k), the dual basis of {e^k}
        volume: coefficient of the pseudoscalar in e_1 ^ ... ^ e_n
    """

    __slots__ = ("vectors", "dual_forms", "reciprocal_vectors", "reciprocal_forms", "volume")

    def __init__(self, vectors: Sequence[Vector]):
        vectors = tuple(v if isinstance(v, Vector) else Vector(v) for v in vectors)
        if not vectors:
            raise SchemaError("a basis needs at least one vector")
        n = check_dim(len(vectors))
        for v in vectors:
            if v.dim != n:
                raise SchemaError(f"basis of {n} vectors in dimension {v.dim}; need n vectors in R^n")

        volume = wedge_vectors(vectors).coeff((1 << n) - 1)
        E = np.array([v.coords for v in vectors])
        if volume == 0.0 or is_degenerate(E):
            raise DegenerateError(
                f"basis vectors are linearly dependent (determinant {volume!r})", value=volume
            )

        try:
            # eps^k(e_j) = delta_j^k  <=>  E @ eps^k = unit_k
            duals = oracle.solve(E, np.eye(n)).T
        except SingularMatrixError as exc:
            raise DegenerateError(f"basis is singular to working precision ({exc})", value=volume) from exc

        self.vectors = vectors
        self.dual_forms = tuple(Form(row) for row in duals)
        self.reciprocal_vectors = tuple(standard_iso_inv(f) for f in self.dual_forms)
        self.reciprocal_forms = tuple(standard_iso(v) for v in vectors)
        self.volume = float(volume)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def matrix(self) -> np.ndarray:
        """Rows are the fiducial coordinates of e_1..e_n."""
        return np.array([v.coords for v in self.vectors])

    @property
    def reciprocal_matrix(self) -> np.ndarray:
        return np.array([v.coords for v in self.reciprocal_vectors])

    @property
    def dual_matrix(self) -> np.ndarray:
        return np.array([f.coords for f in self.dual_forms])

    @property
    def reciprocal_form_matrix(self) -> np.ndarray:
        return np.array([f.coords for f in self.reciprocal_forms])

    def pseudoscalar(self):
        """e_1 ^ ... ^ e_n as a multivector."""
        return pseudoscalar(self.dim) * self.volume

    def pseudoscalar_norm(self) -> float:
        """(e_1 ^ ... ^ e_n) . (e_1 ^ ... ^ e_n)."""
        E = self.pseudoscalar()
        return blade_scalar_product(E, E)

    def components(self, v: Vector) -> np.ndarray:
        """Contravariant components eps^k(v), so v = sum_k eps^k(v) e_k."""
        return np.array([f(v) for f in self.dual_forms])

    def __eq__(self, other):
        if not isinstance(other, Basis):
            return NotImplemented
        return self.vectors == other.vectors

    def __hash__(self):
        return hash(self.vectors)

    def __repr__(self):
        return f"Basis({[v.coords.tolist() for v in self.vectors]})"


def make_basis(vectors) -> Basis:
    """Build a Basis from Vectors or from an array whose rows are fiducial coordinates."""
    if isinstance(vectors, np.ndarray):
        vectors = list(vectors)
    return Basis(vectors)


def canonical_basis(n: int) -> Basis:
    n = check_dim(n)
    return Basis([Vector.unit(n, k) for k in range(n)])
