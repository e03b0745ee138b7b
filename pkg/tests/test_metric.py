import numpy as np
import pytest

from metricext import oracle
from metricext import sampling as S
from metricext.dual import Form, canonical_basis, make_basis, standard_iso, standard_iso_inv
from metricext.errors import AsymmetricMetricError, DegenerateError, InternalConsistencyError
from metricext.exterior import Vector
from metricext.extensor import Extensor11, det, inverse_components, is_symmetric, to_tensor
from metricext.metric import (
    MetricExtensor,
    MetricTensor,
    contravariant_metric,
    factorization_residuals,
    inverse_metric_extensor,
    metric_extensor_from_tensor,
    metric_iso,
    metric_iso_components,
    metric_iso_inv,
    metric_iso_inv_components,
)

MINK = np.diag([1.0, -1.0])
G21 = [[2.0, 1.0], [1.0, 1.0]]
G21_INV = [[1.0, -1.0], [-1.0, 2.0]]


def test_metric_tensor_validation():
    with pytest.raises(AsymmetricMetricError):
        MetricTensor([[1, 2], [2.0000001, 1]])
    with pytest.raises(DegenerateError):
        MetricTensor([[1, 2], [2, 4]])
    G = MetricTensor([[1, 2], [2.5, 1]], symmetrize=True)
    np.testing.assert_array_equal(G.components, [[1, 2.25], [2.25, 1]])


def test_metric_tensor_has_no_inverse():
    assert not hasattr(MetricTensor(np.eye(2)), "inverse")


def test_metric_extensor_validation():
    with pytest.raises(AsymmetricMetricError):
        MetricExtensor([[1, 2], [0, 1]])
    with pytest.raises(DegenerateError):
        MetricExtensor([[1, 1], [1, 1]])


def test_from_tensor_examples():
    g = metric_extensor_from_tensor(MetricTensor(np.eye(3)))
    assert Extensor11(g.matrix) == Extensor11.identity(3)
    g = metric_extensor_from_tensor(MetricTensor(MINK))
    np.testing.assert_array_equal(g.matrix, MINK)
    assert g.det == -1.0
    np.testing.assert_array_equal(g.inverse_extensor.matrix, MINK)
    g = metric_extensor_from_tensor(MetricTensor(G21))
    np.testing.assert_array_equal(g.matrix, G21)
    np.testing.assert_array_equal(g.inverse_extensor.matrix, G21_INV)


def test_contravariant_examples():
    np.testing.assert_array_equal(contravariant_metric(MetricTensor(np.eye(2))).components, np.eye(2))
    np.testing.assert_array_equal(contravariant_metric(MetricTensor(MINK)).components, MINK)
    Gs = contravariant_metric(MetricTensor(G21))
    np.testing.assert_array_equal(Gs.components, G21_INV)
    assert Gs(Form([1, 0]), Form([0, 1])) == -1.0


def test_metric_iso_examples(rng):
    g = MetricExtensor(np.eye(3))
    v = S.random_vector(rng, 3)
    omega = S.random_form(rng, 3)
    assert metric_iso(g, v) == standard_iso(v)
    assert metric_iso_inv(g, omega) == standard_iso_inv(omega)
    assert metric_iso(MetricExtensor(MINK), Vector([3, 4])) == Form([3, -4])
    assert metric_iso_inv(MetricExtensor(G21), Form([2, 1])) == Vector([1, 0])


def test_defining_relations(rng):
    for n in range(1, 6):
        b = S.random_basis(rng, n)
        G = MetricTensor(S.symmetric_matrix(rng, n, max_cond=1e4), b)
        g = metric_extensor_from_tensor(G)
        for _ in range(5):
            v, w = S.random_vector(rng, n), S.random_vector(rng, n)
            expected = G(v, w)
            assert abs(g(v).dot(w) - expected) <= 1e-9 * max(1.0, abs(expected))
            assert abs(metric_iso(g, v)(w) - expected) <= 1e-9 * max(1.0, abs(expected))


def test_round_trips(rng):
    for n in range(1, 6):
        g = S.random_metric_extensor(rng, n, max_cond=1e4)
        v, omega = S.random_vector(rng, n), S.random_form(rng, n)
        assert np.abs(metric_iso_inv(g, metric_iso(g, v)).coords - v.coords).max() <= 1e-9
        assert np.abs(metric_iso(g, metric_iso_inv(g, omega)).coords - omega.coords).max() <= 1e-9


def test_component_paths_match_examples():
    G = MetricTensor(G21)
    assert metric_iso_components(G, Vector([1, 0])) == Form([2, 1])
    assert metric_iso_inv_components(contravariant_metric(G), Form([2, 1])) == Vector([1, 0])


def test_factorization_identity_is_exact():
    rep = factorization_residuals(MetricExtensor(np.eye(3)), [Vector([1, 2, 3])], [Form([3, 2, 1])])
    assert rep.forward == rep.inverse == 0.0
    assert rep.as_dict()["vectors"] == 1


@pytest.mark.parametrize("random_basis", [False, True])
def test_factorization_random(rng, random_basis):
    for n in range(2, 6):
        g = S.random_metric_extensor(rng, n)
        b = S.random_basis(rng, n) if random_basis else canonical_basis(n)
        vs = [S.random_vector(rng, n) for _ in range(100)]
        fs = [S.random_form(rng, n) for _ in range(100)]
        rep = factorization_residuals(g, vs, fs, b)
        assert rep.forward_relative < 1e-9
        assert rep.inverse_relative < 1e-9


def test_contravariant_matches_inverse_components(rng):
    for n in range(1, 6):
        b = S.random_basis(rng, n, max_cond=1e3)
        G = MetricTensor(S.symmetric_matrix(rng, n, max_cond=1e3), b)
        g = metric_extensor_from_tensor(G)
        upper = contravariant_metric(G).components
        assert np.abs(upper - inverse_components(g, b)).max() <= 1e-9 * max(1.0, np.abs(upper).max())
        assert np.abs(upper @ G.components - np.eye(n)).max() <= 1e-9
        assert np.array_equal(upper, upper.T) or np.abs(upper - upper.T).max() <= 1e-9 * np.abs(upper).max()


def test_inverse_metric_extensor_examples():
    assert Extensor11(inverse_metric_extensor(MetricExtensor(np.eye(2))).matrix) == Extensor11.identity(2)
    np.testing.assert_array_equal(inverse_metric_extensor(MetricExtensor(MINK)).matrix, MINK)
    gi = inverse_metric_extensor(MetricExtensor(G21))
    np.testing.assert_array_equal(gi.matrix, G21_INV)
    assert is_symmetric(gi)
    assert det(gi) == pytest.approx(1.0, rel=1e-15)


def test_closure(rng):
    for n in range(2, 6):
        g = S.random_metric_extensor(rng, n)
        gii = inverse_metric_extensor(inverse_metric_extensor(g))
        assert np.abs(gii.matrix - g.matrix).max() <= 1e-9 * max(1.0, np.abs(g.matrix).max())


def test_closure_failure_is_internal_consistency():
    # symmetric to 1e-12 but an inverse check at 1e-20 cannot be met
    g = MetricExtensor(G21)
    with pytest.raises(InternalConsistencyError):
        inverse_metric_extensor(MetricExtensor([[1.0, 0.5], [0.5 + 1e-13, 1.0]], rtol=1e-12), rtol=1e-20)
    assert inverse_metric_extensor(g, rtol=1e-12) is not None


def test_metric_on_non_canonical_basis():
    # identity G on a stretched basis is the extensor with g(e_j) . e_k = delta_jk
    b = make_basis([[1, 0], [0, 2]])
    g = metric_extensor_from_tensor(MetricTensor(np.eye(2), b))
    np.testing.assert_allclose(g.matrix, np.diag([1.0, 0.25]))
    np.testing.assert_allclose(to_tensor(g, b).components, np.eye(2))
    assert oracle.leibniz_det(to_tensor(g, b).components) == pytest.approx(1.0)
