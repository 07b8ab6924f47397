"""mnlab: a numerical laboratory for mixed-norm estimates of truncated
double trigonometric sums.

The package evaluates S_{M,N}(x,y) = sum_{n,m} a_{mn} e^{2 pi i ((m-1)x + (n-1)y)}
on grids, computes discrete l^{p,q} and grid L^{r,s} mixed norms, classifies
exponent quadruples into the piecewise regions of the governing bound exponent,
builds candidate extremizer matrices with certified lower bounds, and brackets
the operator norm sup ||S|| / ||A|| by multi-start ascent.
"""

from .exponents import (
    Branch,
    CoverageError,
    MixedExponents,
    RegionLabel,
    classify,
    phi,
    theta,
    upper_bound_magnitude,
)
from .norms import (
    CoefficientMatrix,
    GridFunction,
    QuadratureSpec,
    QuadratureWarning,
    holder_matrix_chain,
    lpq_norm,
    lrs_norm,
)
from .trigsum import EvalPath, EvalPlan, FrequencyScale, eval_nonortho, eval_sum, eval_sum_at

__all__ = [
    "Branch",
    "CoverageError",
    "MixedExponents",
    "RegionLabel",
    "classify",
    "phi",
    "theta",
    "upper_bound_magnitude",
    "CoefficientMatrix",
    "GridFunction",
    "QuadratureSpec",
    "QuadratureWarning",
    "holder_matrix_chain",
    "lpq_norm",
    "lrs_norm",
    "EvalPath",
    "EvalPlan",
    "FrequencyScale",
    "eval_nonortho",
    "eval_sum",
    "eval_sum_at",
]
