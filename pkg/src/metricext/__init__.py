"""Metric tensors vs. metric extensors on a finite-dimensional real vector space."""

from .dual import (
    Basis,
    Form,
    apply_form,
    b_dot_forms,
    b_dot_vectors,
    canonical_basis,
    make_basis,
    standard_iso,
    standard_iso_inv,
)
from .errors import (
    AsymmetricMetricError,
    DegenerateError,
    DimensionCapError,
    DimensionMismatchError,
    InternalConsistencyError,
    MetricExtError,
    SchemaError,
    SingularMatrixError,
)
from .extensor import (
    Extensor11,
    Tensor2,
    adjoint,
    apply,
    classical_det_of_components,
    det,
    from_tensor,
    inverse,
    inverse_components,
    is_skew,
    is_symmetric,
    outermorphism,
    to_tensor,
)
from .exterior import (
    MAX_DIM,
    Multivector,
    Vector,
    blade_scalar_product,
    grade_project,
    pseudoscalar,
    wedge,
    wedge_vectors,
)
from .metric import (
    ContravariantMetric,
    FactorizationReport,
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

__version__ = "0.1.0"
