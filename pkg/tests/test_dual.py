import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metricext import (
    Form,
    Vector,
    apply_form,
    b_dot_forms,
    b_dot_vectors,
    canonical_basis,
    make_basis,
    standard_iso,
    standard_iso_inv,
)
from metricext import sampling as S
from metricext.errors import DegenerateError, DimensionMismatchError

coord = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_duality_of_fiducial_bases():
    assert apply_form(Form.unit(2, 0), Vector.unit(2, 0)) == 1.0
    assert apply_form(Form.unit(2, 0), Vector.unit(2, 1)) == 0.0


def test_apply_form_example():
    omega = Form([2, 1])
    assert apply_form(omega, Vector([1, 3])) == 5.0
    assert omega(Vector([1, 3])) == 5.0


def test_standard_iso_examples():
    assert standard_iso(Vector([0, 0])) == Form([0, 0])
    assert standard_iso(Vector.unit(3, 1)) == Form.unit(3, 1)
    assert standard_iso(Vector([3, 4])) == Form([3, 4])
    assert standard_iso_inv(Form.unit(3, 2)) == Vector.unit(3, 2)
    assert standard_iso_inv(Form([1, -1])) == Vector([1, -1])


def test_vectors_and_forms_are_distinct_types():
    v = Vector([1, 2])
    assert v != Form([1, 2])
    with pytest.raises(TypeError):
        v + Form([1, 2])
    with pytest.raises(TypeError):
        standard_iso(Form([1, 2]))


def test_b_dot_examples():
    assert b_dot_vectors(Vector([3, 4]), Vector([3, 4])) == 25.0
    assert b_dot_vectors(Vector([3, 4]), Vector([0, 0])) == 0.0
    assert b_dot_forms(Form([1, 2]), Form([3, -1])) == 1.0
    for j in range(3):
        for k in range(3):
            assert b_dot_vectors(Vector.unit(3, j), Vector.unit(3, k)) == float(j == k)
            assert b_dot_forms(Form.unit(3, j), Form.unit(3, k)) == float(j == k)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        apply_form(Form([1, 2]), Vector([1, 2, 3]))
    with pytest.raises(DimensionMismatchError):
        b_dot_vectors(Vector([1]), Vector([1, 2]))


@settings(max_examples=100, deadline=None)
@given(st.lists(coord, min_size=1, max_size=12))
def test_standard_iso_round_trips_exact(xs):
    v, omega = Vector(xs), Form(xs)
    assert standard_iso_inv(standard_iso(v)) == v
    assert standard_iso(standard_iso_inv(omega)) == omega


@settings(max_examples=100, deadline=None)
@given(st.lists(coord, min_size=1, max_size=8))
def test_b_dot_positive_definite(xs):
    v = Vector(xs)
    q = b_dot_vectors(v, v)
    assert q >= 0.0
    if np.abs(v.coords).max() > 1e-100:  # below this the squares underflow
        assert q > 0.0
    if not np.any(v.coords):
        assert q == 0.0
    assert b_dot_forms(standard_iso(v), standard_iso(v)) == q


def test_make_basis_example():
    b = make_basis([Vector([1, 0]), Vector([1, 1])])
    np.testing.assert_array_equal(b.reciprocal_matrix, [[1, -1], [0, 1]])
    assert b.reciprocal_vectors[0] == Vector([1, -1])
    assert b.reciprocal_vectors[1] == Vector([0, 1])
    assert b.reciprocal_forms[1] == Form([1, 1])


def test_canonical_basis_is_self_reciprocal():
    b = canonical_basis(4)
    for k in range(4):
        assert b.reciprocal_vectors[k] == Vector.unit(4, k)
        assert b.dual_forms[k] == Form.unit(4, k)
    assert b.pseudoscalar_norm() == 1.0


def test_degenerate_basis_rejected_with_value():
    with pytest.raises(DegenerateError) as info:
        make_basis([Vector([1, 0]), Vector([2, 0])])
    assert info.value.value == 0.0
    assert info.value.category == "degenerate"


def test_nearly_dependent_basis_rejected():
    with pytest.raises(DegenerateError):
        make_basis([[1.0, 0.0], [1.0, 1e-14]])


def test_scaled_basis_accepted():
    # a tiny but perfectly conditioned basis is still a basis
    b = make_basis(1e-8 * np.eye(3))
    np.testing.assert_allclose(b.reciprocal_matrix, 1e8 * np.eye(3))


def test_pseudoscalar_norm_is_gram_determinant():
    b = make_basis([[1, 0], [0, 2]])
    assert b.pseudoscalar_norm() == 4.0
    assert b.volume == 2.0


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_reciprocity_and_expansions(rng, n):
    eye = np.eye(n)
    for _ in range(50):
        b = S.random_basis(rng, n)
        assert np.abs([[ek.dot(el) for el in b.reciprocal_vectors] for ek in b.vectors] - eye).max() <= 1e-9
        assert np.abs([[b_dot_forms(ek, el) for el in b.reciprocal_forms] for ek in b.dual_forms] - eye).max() <= 1e-9
        assert np.abs([[ek(ej) for ej in b.reciprocal_vectors] for ek in b.reciprocal_forms] - eye).max() <= 1e-9
        assert np.abs([[ek(ej) for ej in b.vectors] for ek in b.dual_forms] - eye).max() <= 1e-9
        v = S.random_vector(rng, n)
        first = sum((b_dot_vectors(v, ek) * e for ek, e in zip(b.reciprocal_vectors, b.vectors)), Vector.zero(n))
        second = sum((b_dot_vectors(v, ek) * e for ek, e in zip(b.vectors, b.reciprocal_vectors)), Vector.zero(n))
        scale = max(1.0, np.abs(v.coords).max())
        assert np.abs(first.coords - v.coords).max() <= 1e-9 * scale
        assert np.abs(second.coords - v.coords).max() <= 1e-9 * scale
        np.testing.assert_allclose(b.components(v), [f(v) for f in b.dual_forms], atol=1e-12)
