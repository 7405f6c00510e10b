"""hyperzero: exact and numeric tooling for eventually-real-rooted polynomial families.

The library builds the polynomial sequence generated by 1/((1-t)**n + z*t**r),
certifies where its real zeros live by exact Sturm counts, parametrizes the
limiting zero curve, solves the rescaled characteristic polynomial at each
curve point, and cross-checks the two independent root routes against each
other.  See the README for the CLI.
"""

from .curve import (
    DoubleZero,
    EndpointLimits,
    IntervalI,
    OutOfDomain,
    OutOfInterval,
    ThetaSample,
    WrongCase,
    double_zero_theta,
    endpoint_limits,
    interval_I,
    theta_of_z,
    z_of_theta,
)
from .exactpoly import (
    EndpointIsRoot,
    IntPoly,
    IsolatedRoot,
    RatPoly,
    SturmChain,
    ZeroPolynomial,
    cauchy_root_bound,
    isolate_roots,
    poly_add,
    poly_mul,
    poly_scale,
    poly_sub,
    sturm_count,
)
from .family import (
    FamilyParams,
    GeneralDenominator,
    InvalidParams,
    SingularOnContour,
    ZeroConstantTerm,
    eval_series_oracle,
    generate,
    generate_general,
)
from .qspec import (
    CircleClassificationAmbiguous,
    NoConvergence,
    QSpectrum,
    WrongDegree,
    build_q,
    eval_R,
    eval_R_cubic,
    find_R_roots,
    solve_q,
)
from .verify import (
    CountMismatch,
    CrossCheckResult,
    DensityReport,
    NumericUnderflow,
    SignPattern,
    VerifyReport,
    check_hyperbolicity,
    check_sign_pattern,
    cross_check_roots,
    density_scan,
    expsum_sign,
)

__version__ = "0.1.0"
