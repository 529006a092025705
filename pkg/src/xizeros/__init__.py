"""Configurable-precision numerical laboratory for the Xi_aleph family of
entire functions: kernel evaluation, adaptive quadrature, Taylor
coefficients, real and complex zero location, truncated Hadamard products,
and an identity verification suite.
"""

from .numerics import (
    BoundedComplex,
    BoundedReal,
    NonConvergent,
    PrecisionContext,
    StepUnderflow,
    differentiate,
    integrate,
)
from .kernel import KernelTruncation, OutOfDomain, eval_kernel, plan_truncation
from .transform import (
    AlephParam,
    EvalResult,
    eval_M,
    eval_Xi,
    eval_Xi_derivative,
    heat_flow_residual,
)
from .series import (
    CoefficientTable,
    PositivityViolation,
    TuranMargin,
    compute_coefficients,
    eval_series,
    turan_diagnostic,
)
from .zeros import (
    Box,
    BoxCount,
    ComplexZero,
    RealZero,
    RealityReport,
    ZeroOnContour,
    ZeroTable,
    count_zeros_in_box,
    locate_complex_zeros,
    located_zero_count,
    reality_certificate,
    refine_zero,
    scan_real_zeros,
)
from .products import (
    IdentityReport,
    ProductTruncation,
    check_identities,
    deep_scan,
    estimate_order,
    eval_product,
    fit_zero_density,
    termwise_diagnostic,
    zero_sum,
    zero_sum_tail,
)
from .io import (
    coeff_table_from_csv,
    coeff_table_to_csv,
    export_table,
    fmt_decimal,
    import_table,
    parse_decimal,
    reports_to_json,
    zero_table_from_csv,
    zero_table_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AlephParam",
    "Box",
    "BoxCount",
    "BoundedComplex",
    "BoundedReal",
    "CoefficientTable",
    "ComplexZero",
    "EvalResult",
    "IdentityReport",
    "KernelTruncation",
    "NonConvergent",
    "OutOfDomain",
    "PositivityViolation",
    "PrecisionContext",
    "ProductTruncation",
    "RealZero",
    "RealityReport",
    "StepUnderflow",
    "TuranMargin",
    "ZeroOnContour",
    "ZeroTable",
    "check_identities",
    "deep_scan",
    "coeff_table_from_csv",
    "coeff_table_to_csv",
    "compute_coefficients",
    "count_zeros_in_box",
    "differentiate",
    "estimate_order",
    "eval_M",
    "eval_Xi",
    "eval_Xi_derivative",
    "eval_kernel",
    "eval_product",
    "eval_series",
    "export_table",
    "fit_zero_density",
    "fmt_decimal",
    "heat_flow_residual",
    "import_table",
    "integrate",
    "locate_complex_zeros",
    "located_zero_count",
    "parse_decimal",
    "plan_truncation",
    "reality_certificate",
    "refine_zero",
    "reports_to_json",
    "scan_real_zeros",
    "termwise_diagnostic",
    "turan_diagnostic",
    "zero_sum",
    "zero_sum_tail",
    "zero_table_from_csv",
    "zero_table_to_csv",
]
