"""Candidate extremizer matrices and their certified or measured lower bounds.

Five families of coefficient matrices come close to saturating the mixed-norm
growth bound in different exponent regions:

* the chirp matrix B with unimodular quadratic-phase entries, whose sum
  factorizes into two one-dimensional quadratic-phase sums;
* the column matrix C (ones in a single column), whose sum is a modulated
  Dirichlet kernel in x;
* the row matrix R (ones in a single row), the transpose picture;
* the all-ones matrix D, a Dirichlet kernel in each variable;
* the single-entry matrix E, whose sum has constant modulus — the exactly
  sharp case.

For C, R and D the kernel inequality sin(pi M x)/sin(pi x) >= sin(1) * M on
[0, 1/(pi M)] turns into closed-form lower bounds on the operator ratio with
explicit constants; those are certified (theorem-backed, checked pointwise,
no tolerance).  For B the lower bound rests on the stationary-phase
approximation of the quadratic chirp sum, which this module measures rather
than assumes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exponents import MixedExponents, upper_bound_magnitude
from .norms import CoefficientMatrix, GridFunction, QuadratureSpec, lpq_norm, lrs_norm
from .trigsum import EvalPath, EvalPlan, eval_sum

__all__ = [
    "ChirpB",
    "ColumnC",
    "RowR",
    "OnesD",
    "UnitE",
    "ExtremizerKind",
    "ChirpParams",
    "build",
    "chirp_sum",
    "chirp_main_term",
    "quadratic_phase_sum",
    "quadratic_phase_main_term",
    "chirp_residual_sweep",
    "verify_chirp_lower",
    "dirichlet_quotient",
    "certified_lower_bound",
    "verify_dirichlet_lower",
    "unit_sharpness",
    "SIN1",
    "ChirpResidualReport",
    "ChirpLowerReport",
    "DirichletLowerReport",
    "UnitSharpnessReport",
]

SIN1 = math.sin(1.0)

# ----------------------------------------------------------------------------
# Matrix constructions
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ChirpB:
    """Unimodular quadratic-phase entries e^{-(pi/2) eta i ((j-1)^2/M + (k-1)^2/N)}."""

    eta: float = 0.2

    def __post_init__(self) -> None:
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")


@dataclass(frozen=True)
class ColumnC:
    """A single column (1-based index) filled with one nonzero value."""

    col: int = 1
    value: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class RowR:
    """A single row (1-based index) filled with one nonzero value."""

    row: int = 1
    value: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class OnesD:
    """A constant matrix."""

    value: complex = 1.0 + 0.0j


@dataclass(frozen=True)
class UnitE:
    """A single nonzero entry at a 1-based position."""

    row: int = 1
    col: int = 1
    value: complex = 1.0 + 0.0j


ExtremizerKind = Union[ChirpB, ColumnC, RowR, OnesD, UnitE]


def kind_name(kind: ExtremizerKind) -> str:
    return {ChirpB: "chirp", ColumnC: "column", RowR: "row", OnesD: "ones", UnitE: "unit"}[type(kind)]


def _check_index(value: int, upper: int, what: str) -> None:
    if not 1 <= value <= upper:
        raise ValueError(f"{what} must lie in 1..{upper}, got {value}")


def _check_value(value: complex) -> complex:
    value = complex(value)
    if value == 0:
        raise ValueError("entry value must be nonzero")
    return value


def build(kind: ExtremizerKind, M: int, N: int) -> CoefficientMatrix:
    """Construct the literal extremizer matrix of the given kind and shape."""
    if M < 1 or N < 1:
        raise ValueError(f"dimensions must be positive, got M={M}, N={N}")
    if isinstance(kind, ChirpB):
        j = np.arange(M, dtype=np.float64)  # j-1 for 1-based j
        k = np.arange(N, dtype=np.float64)
        phase = (math.pi / 2.0) * kind.eta * (np.add.outer(j * j / M, k * k / N))
        entries = np.exp(-1j * phase)
    elif isinstance(kind, ColumnC):
        _check_index(kind.col, N, "column index")
        entries = np.zeros((M, N), dtype=np.complex128)
        entries[:, kind.col - 1] = _check_value(kind.value)
    elif isinstance(kind, RowR):
        _check_index(kind.row, M, "row index")
        entries = np.zeros((M, N), dtype=np.complex128)
        entries[kind.row - 1, :] = _check_value(kind.value)
    elif isinstance(kind, OnesD):
        entries = np.full((M, N), _check_value(kind.value), dtype=np.complex128)
    elif isinstance(kind, UnitE):
        _check_index(kind.row, M, "row index")
        _check_index(kind.col, N, "column index")
        entries = np.zeros((M, N), dtype=np.complex128)
        entries[kind.row - 1, kind.col - 1] = _check_value(kind.value)
    else:
        raise TypeError(f"unknown extremizer kind {kind!r}")
    return CoefficientMatrix(M=M, N=N, entries=entries)


# ----------------------------------------------------------------------------
# Quadratic-phase (chirp) sums and their stationary-phase main term
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ChirpParams:
    """Evaluation point for the chirp sum, constrained to the central window.

    The window is eta <= x <= 1 - eta for 0 < eta < 1.  (The quality of the
    closed-form approximation inside this window is measured, not assumed;
    see `chirp_residual_sweep`.)
    """

    M: int
    eta: float
    x: float

    def __post_init__(self) -> None:
        if self.M < 1:
            raise ValueError(f"M must be positive, got {self.M}")
        if not 0.0 < self.eta < 1.0:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")
        if not self.eta <= self.x <= 1.0 - self.eta:
            raise ValueError(
                f"x must lie in the window [eta, 1-eta] = [{self.eta}, {1.0 - self.eta}], got {self.x}"
            )


def quadratic_phase_sum(M: int, eta: float, x: float) -> complex:
    """sum_{m=0}^{M-1} e^{2 pi i m (x - (eta/4) m / M)}, compensated accumulation.

    Valid for any real x; phases are reduced mod 1 before exponentiation and
    the real and imaginary parts are accumulated with exact (fsum) summation.
    """
    m = np.arange(M, dtype=np.float64)
    t = np.mod(m * x - (eta / 4.0) * (m * m) / M, 1.0)
    z = np.exp(2j * np.pi * t)
    return complex(math.fsum(z.real), math.fsum(z.imag))


def quadratic_phase_main_term(M: int, eta: float, x: float) -> complex:
    """The stationary-phase closed form sqrt(2/eta) e^{-i pi/4} e^{2 pi i M x^2/eta} sqrt(M).

    Its modulus is exactly sqrt(2 M / eta).  The phase of the chirp sum is
    stationary at m* = 2 M x / eta, which lies inside the summation range
    0..M-1 only when x < eta/2; the closed form describes the sum in that
    regime (measured by `chirp_residual_sweep`, not assumed).
    """
    phase = math.fmod(M * x * x / eta, 1.0)
    return (
        math.sqrt(2.0 / eta)
        * cmath.exp(-1j * math.pi / 4.0)
        * cmath.exp(2j * math.pi * phase)
        * math.sqrt(M)
    )


def chirp_sum(params: ChirpParams) -> complex:
    """The chirp sum at a window-validated evaluation point."""
    return quadratic_phase_sum(params.M, params.eta, params.x)


def chirp_main_term(params: ChirpParams) -> complex:
    """The stationary-phase closed form at a window-validated evaluation point."""
    return quadratic_phase_main_term(params.M, params.eta, params.x)


def _phase_sums_on_points(count: int, eta: float, xs: np.ndarray) -> np.ndarray:
    """Vectorized quadratic-phase sums for a 1-D array of x values."""
    m = np.arange(count, dtype=np.float64)
    t = np.mod(np.outer(xs, m) - (eta / 4.0) * (m * m) / count, 1.0)
    return np.exp(2j * np.pi * t).sum(axis=1)


@dataclass(frozen=True)
class ChirpResidualReport:
    """Residual sweep of the chirp sum against its stationary-phase main term.

    `max_residuals[i]` is max over the x-sample of |sum - main term| at
    M = Ms[i]; `slope` is the least-squares slope of log(max residual)
    against log(M) — near zero when the main term captures the sum, near 1/2
    when it does not (the spurious main term itself grows like sqrt(M)).
    `amplitude_ratio` is max over the x-sample of |sum|/sqrt(M) at the
    largest M, to be compared with the predicted amplitude sqrt(2/eta).
    """

    eta: float
    Ms: tuple[int, ...]
    xs: tuple[float, ...]
    max_residuals: tuple[float, ...]
    slope: float
    amplitude_ratio: float
    predicted_amplitude: float

    def to_json_dict(self) -> dict:
        return {
            "kind": "chirp_residual",
            "eta": self.eta,
            "Ms": list(self.Ms),
            "xs": list(self.xs),
            "max_residuals": list(self.max_residuals),
            "slope": self.slope,
            "amplitude_ratio": self.amplitude_ratio,
            "predicted_amplitude": self.predicted_amplitude,
        }


def chirp_residual_sweep(
    eta: float, Ms: "list[int] | tuple[int, ...]", xs: "list[float] | tuple[float, ...]"
) -> ChirpResidualReport:
    """Measure |chirp sum - main term| over an (M, x) grid and fit its growth."""
    if len(Ms) < 2:
        raise ValueError("need at least two M values to fit a slope")
    xs_arr = np.asarray(xs, dtype=np.float64)
    max_residuals = []
    for M in Ms:
        sums = _phase_sums_on_points(M, eta, xs_arr)
        mains = np.array([quadratic_phase_main_term(M, eta, float(x)) for x in xs_arr])
        max_residuals.append(float(np.max(np.abs(sums - mains))))
    slope = float(np.polyfit(np.log(np.asarray(Ms, dtype=float)), np.log(max_residuals), 1)[0])
    largest = max(Ms)
    amp = float(np.max(np.abs(_phase_sums_on_points(largest, eta, xs_arr)))) / math.sqrt(largest)
    return ChirpResidualReport(
        eta=float(eta),
        Ms=tuple(int(M) for M in Ms),
        xs=tuple(float(x) for x in xs_arr),
        max_residuals=tuple(max_residuals),
        slope=slope,
        amplitude_ratio=amp,
        predicted_amplitude=math.sqrt(2.0 / eta),
    )


@dataclass(frozen=True)
class ChirpLowerReport:
    """Minimum of |T B| / sqrt(M N) over a sub-square grid.

    In the central exponent region (alpha, beta <= 1/2 <= gamma, delta) the
    growth bound constant is M^(1/2-alpha) N^(1/2-beta), so `min_ratio` is
    exactly the observed constant relating the chirp lower bound to the upper
    bound there.  Recorded, not asserted.
    """

    M: int
    N: int
    eta: float
    grid_points: int
    min_modulus: float
    min_ratio: float
    at_x: float
    at_y: float

    def to_json_dict(self) -> dict:
        return {
            "kind": "chirp",
            "M": self.M,
            "N": self.N,
            "eta": self.eta,
            "exponents": None,
            "lower": self.min_modulus,
            "upper": math.sqrt(self.M * self.N),
            "ratio": self.min_ratio,
        }


def verify_chirp_lower(M: int, N: int, eta: float = 0.2, grid_points: int = 33) -> ChirpLowerReport:
    """Evaluate |T B| on a grid over [eta, 1-eta]^2 via its factorization.

    T B (x, y) splits into the product of one x-chirp sum of length M and one
    y-chirp sum of length N, so the grid minimum of the modulus is the
    product of the per-axis minima.
    """
    if M < 1 or N < 1:
        raise ValueError(f"dimensions must be positive, got M={M}, N={N}")
    if not 0.0 < eta < 0.5:
        raise ValueError(f"eta must lie in (0, 0.5) for a non-empty window, got {eta}")
    if grid_points < 2:
        raise ValueError(f"need at least two grid points, got {grid_points}")
    xs = np.linspace(eta, 1.0 - eta, grid_points)
    fx = np.abs(_phase_sums_on_points(M, eta, xs))
    fy = np.abs(_phase_sums_on_points(N, eta, xs))
    ix = int(np.argmin(fx))
    iy = int(np.argmin(fy))
    min_modulus = float(fx[ix] * fy[iy])
    return ChirpLowerReport(
        M=M,
        N=N,
        eta=float(eta),
        grid_points=grid_points,
        min_modulus=min_modulus,
        min_ratio=min_modulus / math.sqrt(M * N),
        at_x=float(xs[ix]),
        at_y=float(xs[iy]),
    )


# ----------------------------------------------------------------------------
# Dirichlet-kernel lower bounds (certified)
# ----------------------------------------------------------------------------


def dirichlet_quotient(M: int, x: "float | np.ndarray") -> "float | np.ndarray":
    """sin(pi M x) / sin(pi x), with the removable singularity filled by its limit.

    At integer x both sine factors vanish and the quotient tends to M (times
    the sign (-1)^{x (M-1)}, which is +1 at x = 0); only the limit value M is
    relevant on [0, 1/(pi M)].
    """
    x_arr = np.asarray(x, dtype=np.float64)
    denom = np.sin(np.pi * x_arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        quot = np.where(denom == 0.0, float(M), np.sin(np.pi * M * x_arr) / denom)
    if np.isscalar(x) or x_arr.ndim == 0:
        return float(quot)
    return quot


def _dirichlet_sample(dim: int, samples: int) -> np.ndarray:
    """Equispaced points of [0, 1/(pi * dim)], both endpoints included."""
    return np.linspace(0.0, 1.0 / (math.pi * dim), samples + 2)


def _check_dirichlet_pointwise(dim: int, samples: int) -> float:
    """Verify sin(pi*dim*x)/sin(pi*x) >= sin(1)*dim at every sample; return the min margin."""
    pts = _dirichlet_sample(dim, samples)
    values = np.asarray(dirichlet_quotient(dim, pts))
    margins = values - SIN1 * dim
    worst = float(margins.min())
    if worst < 0.0:
        bad = pts[int(np.argmin(margins))]
        raise AssertionError(
            f"Dirichlet kernel bound failed at x={bad!r} for size {dim}: "
            f"{values[int(np.argmin(margins))]!r} < sin(1)*{dim} — implementation bug"
        )
    return worst


@dataclass(frozen=True)
class DirichletLowerReport:
    """Certified lower bound on the operator ratio for a column/row/ones matrix.

    `certified_lower` comes from restricting the integral to the kernel's
    main lobe: sin(1)/pi^(1/r) * M^(1 - 1/r - 1/p) for a column,
    sin(1)/pi^(1/s) * N^(1 - 1/s - 1/q) for a row, and the product of both
    factors for the all-ones matrix.  `observed_ratio` is the grid-quadrature
    measurement of the same ratio (always >= certified up to quadrature
    error).  `ratio` = certified_lower / upper is at most 1 by soundness of
    the growth bound.
    """

    kind: str
    M: int
    N: int
    exponents: MixedExponents
    certified_lower: float
    observed_ratio: float
    upper: float
    ratio: float
    min_kernel_margin: float

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "M": self.M,
            "N": self.N,
            "exponents": list(self.exponents.as_tuple()),
            "lower": self.certified_lower,
            "observed": self.observed_ratio,
            "upper": self.upper,
            "ratio": self.ratio,
        }


def certified_lower_bound(kind: "ColumnC | RowR | OnesD", M: int, N: int, e: MixedExponents) -> float:
    """The closed-form main-lobe lower bound on ||T kind|| / ||kind||.

    sin(1)/pi^(1/r) * M^(1 - 1/r - 1/p) for a column, sin(1)/pi^(1/s) *
    N^(1 - 1/s - 1/q) for a row, the product of both factors for the all-ones
    matrix.  Independent of the nonzero entry value, which cancels in the
    ratio.
    """
    a, b, g, d = e.alpha, e.beta, e.gamma, e.delta
    if isinstance(kind, ColumnC):
        return SIN1 / math.pi**g * float(M) ** (1.0 - g - a)
    if isinstance(kind, RowR):
        return SIN1 / math.pi**d * float(N) ** (1.0 - d - b)
    if isinstance(kind, OnesD):
        return (
            SIN1**2
            / math.pi ** (g + d)
            * float(M) ** (1.0 - g - a)
            * float(N) ** (1.0 - d - b)
        )
    raise TypeError(f"certified bounds exist for column/row/ones kinds, got {kind!r}")


def verify_dirichlet_lower(
    kind: "ColumnC | RowR | OnesD",
    M: int,
    N: int,
    e: MixedExponents,
    samples: int = 64,
    quad: QuadratureSpec = QuadratureSpec(),
) -> DirichletLowerReport:
    """Check the kernel inequality pointwise, then certify the closed-form lower bound.

    The pointwise stage samples x in [0, 1/(pi M)] (and/or y in [0, 1/(pi N)]
    for the kinds extending in that direction) at `samples` equispaced points
    plus both endpoints, comparing against sin(1) * dimension exactly — a
    failure raises, since the inequality is theorem-backed.  The certified
    ratio is then compared against the growth bound constant.
    """
    if isinstance(kind, ColumnC):
        margin = _check_dirichlet_pointwise(M, samples)
    elif isinstance(kind, RowR):
        margin = _check_dirichlet_pointwise(N, samples)
    elif isinstance(kind, OnesD):
        margin = min(_check_dirichlet_pointwise(M, samples), _check_dirichlet_pointwise(N, samples))
    else:
        raise TypeError(f"verify_dirichlet_lower applies to column/row/ones kinds, got {kind!r}")
    certified = certified_lower_bound(kind, M, N, e)
    upper = upper_bound_magnitude(M, N, e)
    if certified > upper * (1.0 + 1e-12):
        raise AssertionError(
            f"certified lower bound {certified!r} exceeds the growth bound {upper!r} "
            f"at M={M}, N={N}, exponents {e.as_tuple()} — implementation bug"
        )
    A = build(kind, M, N)
    grid = EvalPlan(Kx=max(quad.oversample * M, 8), Ky=max(quad.oversample * N, 8),
                    path=EvalPath.ZERO_PAD_TRANSFORM)
    observed = lrs_norm(eval_sum(A, grid), e, quad) / lpq_norm(A, e)
    return DirichletLowerReport(
        kind=kind_name(kind),
        M=M,
        N=N,
        exponents=e,
        certified_lower=certified,
        observed_ratio=float(observed),
        upper=upper,
        ratio=certified / upper,
        min_kernel_margin=margin,
    )


# ----------------------------------------------------------------------------
# The exactly sharp single-entry case
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSharpnessReport:
    """Both sides of the single-entry equality ||T E|| = ||E|| and their ratio."""

    M: int
    N: int
    exponents: MixedExponents
    lhs: float
    rhs: float
    ratio: float

    def to_json_dict(self) -> dict:
        return {
            "kind": "unit",
            "M": self.M,
            "N": self.N,
            "exponents": list(self.exponents.as_tuple()),
            "lower": self.lhs,
            "upper": self.rhs,
            "ratio": self.ratio,
        }


def unit_sharpness(
    kind: UnitE, M: int, N: int, e: MixedExponents, quad: QuadratureSpec = QuadratureSpec()
) -> UnitSharpnessReport:
    """Confirm that a single-entry matrix gives operator ratio exactly one.

    |T E| is constant (equal to the entry's modulus), so every grid L^{r,s}
    norm is exact regardless of resolution and the ratio is 1 up to roundoff
    for every exponent tuple and entry position.
    """
    A = build(kind, M, N)
    grid = EvalPlan(Kx=max(quad.oversample * M, 8), Ky=max(quad.oversample * N, 8),
                    path=EvalPath.ZERO_PAD_TRANSFORM)
    lhs = lrs_norm(eval_sum(A, grid), e, quad)
    rhs = lpq_norm(A, e)
    return UnitSharpnessReport(M=M, N=N, exponents=e, lhs=float(lhs), rhs=float(rhs),
                               ratio=float(lhs / rhs))
