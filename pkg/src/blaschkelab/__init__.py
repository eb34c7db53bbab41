"""Numerical verification lab for weighted Blaschke-type zero conditions on
the unit disc: test function families, singularity-aware quadrature,
argument-principle zero location, identity residuals, and the inequality
suites built on top of them."""

from .errors import (
    BlaschkeLabError,
    ConfigError,
    ContourTooCloseError,
    DomainError,
    NonIntegralWindingError,
    NonSmoothPointError,
    QuadratureEvaluationError,
    ScenarioRejectedError,
    SingularEvaluationError,
    UnsatisfiableNormalizationError,
)
from .funcs import (
    AnalyticFunctionSpec,
    GrowthBound,
    eval_log_modulus,
    make_blaschke_product,
    make_constant,
    make_growth_function,
    multiply,
)
from .green import FieldSpec, GreenReport, green_identity_report, green_identity_residual
from .nevan import (
    VERIFICATION_MODES,
    NormEstimate,
    TheoremScenario,
    VerificationReport,
    blaschke_sum,
    divergence_probe,
    geometric_zero_family,
    norm_p_positive,
    norm_p_zero,
    norm_p_zero_mixed,
    threshold_comparison,
    verify_theorem,
)
from .quad import QuadratureConfig, QuadratureResult, integrate_circle, integrate_disc
from .weights import (
    ClosedArcSet,
    MixedWeightSpec,
    RationalWeightSpec,
    distance_to_set,
    epsilon_transform,
    eval_R_modulus,
    eval_h,
    eval_mixed,
    tilde_transform,
)
from .zeros import Region, ZeroSet, locate_zeros

__version__ = "0.1.0"
