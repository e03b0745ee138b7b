"""Exception hierarchy. Each class carries the machine-readable category the CLI reports."""


class MetricExtError(Exception):
    category = "internal-consistency"


class SchemaError(MetricExtError, ValueError):
    category = "schema"


class DimensionMismatchError(SchemaError):
    pass


class DimensionCapError(MetricExtError, ValueError):
    category = "cap"


class DegenerateError(MetricExtError, ValueError):
    """Input is singular or linearly dependent; ``value`` holds the offending determinant."""

    category = "degenerate"

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class SingularMatrixError(DegenerateError):
    pass


class AsymmetricMetricError(SchemaError):
    pass


class InternalConsistencyError(MetricExtError, ArithmeticError):
    category = "internal-consistency"
