"""Discrete l^{p,q} and grid L^{r,s} mixed norms, plus the shared JSON formats.

The discrete norm applies the p-norm down each column (row index m is the
inner index), then the q-norm across columns.  The grid norm applies the
rectangle rule in x for each grid row, then the same rule in y; on uniform
periodic grids the rectangle rule is spectrally accurate and exact on
trigonometric polynomials of degree below the grid size, which makes the
l^{2,2} / L^{2,2} identity an exact check rather than an approximate one.

Powers are accumulated with the largest modulus factored out, so exponents
like p = 1000 neither overflow nor underflow.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exponents import MixedExponents

__all__ = [
    "CoefficientMatrix",
    "GridFunction",
    "QuadratureSpec",
    "QuadratureWarning",
    "lpq_norm",
    "lrs_norm",
    "holder_matrix_chain",
    "matrix_to_json",
    "matrix_from_json",
    "grid_to_json",
    "grid_from_json",
    "load_matrix",
    "save_matrix",
    "load_grid",
    "save_grid",
]


class QuadratureWarning(UserWarning):
    """The refinement check found the half-coarse grid disagreeing beyond rel_tol."""


@dataclass(frozen=True)
class CoefficientMatrix:
    """A complex M x N coefficient matrix with explicit dimensions.

    `entries[m, n]` is a_{m+1, n+1} in 1-based terms; the row index m is the
    inner (p-summed) index.  Entries must be finite.
    """

    M: int
    N: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.M < 1 or self.N < 1:
            raise ValueError(f"dimensions must be positive, got M={self.M}, N={self.N}")
        arr = np.asarray(self.entries, dtype=np.complex128)
        if arr.shape != (self.M, self.N):
            raise ValueError(f"entries shape {arr.shape} does not match (M, N)=({self.M}, {self.N})")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("entries must all be finite")
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_array(cls, a: np.ndarray) -> "CoefficientMatrix":
        a = np.atleast_2d(np.asarray(a, dtype=np.complex128))
        return cls(M=a.shape[0], N=a.shape[1], entries=a)


@dataclass(frozen=True)
class GridFunction:
    """Complex samples f(x_j, y_k) on the uniform grid x_j = j/Kx, y_k = k/Ky.

    The grid is left-closed and periodic: the right endpoint 1 is identified
    with 0 and never sampled.  `samples[j, k]` is the value at (x_j, y_k).
    """

    Kx: int
    Ky: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.Kx < 1 or self.Ky < 1:
            raise ValueError(f"grid sizes must be positive, got Kx={self.Kx}, Ky={self.Ky}")
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.shape != (self.Kx, self.Ky):
            raise ValueError(f"samples shape {arr.shape} does not match (Kx, Ky)=({self.Kx}, {self.Ky})")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("samples must all be finite")
        object.__setattr__(self, "samples", arr)

    def x(self) -> np.ndarray:
        return np.arange(self.Kx) / self.Kx

    def y(self) -> np.ndarray:
        return np.arange(self.Ky) / self.Ky


@dataclass(frozen=True)
class QuadratureSpec:
    """Grid-quadrature policy: oversampling factor and optional refinement check.

    `oversample` scales the default grid relative to the matrix dimensions
    (callers build grids of size oversample*M by oversample*N).  With
    `refine_check` set, lrs_norm recomputes on the half-coarse grid and warns
    when the two values disagree by more than `rel_tol` relatively.
    """

    oversample: int = 8
    refine_check: bool = False
    rel_tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.oversample < 2:
            raise ValueError(f"oversample must be >= 2, got {self.oversample}")
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")


def _power_reduce(a: np.ndarray, expo: float, axis: int, mean: bool) -> np.ndarray:
    """(sum_or_mean of a**expo)**(1/expo) along `axis`, with max factored out.

    `a` must be non-negative real.  expo = inf (encoded by the callers as
    reciprocal 0) is handled by the callers via nanmax; here expo is finite
    and >= 1.
    """
    top = np.max(a, axis=axis)
    # Avoid 0/0 where a whole slice vanishes; those slices contribute 0.
    safe = np.where(top > 0.0, top, 1.0)
    scaled = a / np.expand_dims(safe, axis)
    acc = scaled**expo
    body = acc.mean(axis=axis) if mean else acc.sum(axis=axis)
    return top * body ** (1.0 / expo)


def lpq_norm(A: CoefficientMatrix, e: MixedExponents) -> float:
    """The discrete mixed norm: p-norm over rows m per column, q-norm across columns.

    Only e.alpha and e.beta are consulted.  Exactly zero iff A is the zero
    matrix.
    """
    a = np.abs(A.entries)
    if e.alpha == 0.0:  # p = inf
        col = a.max(axis=0)
    else:
        col = _power_reduce(a, 1.0 / e.alpha, axis=0, mean=False)
    if e.beta == 0.0:  # q = inf
        return float(col.max())
    return float(_power_reduce(col, 1.0 / e.beta, axis=0, mean=False))


def lrs_norm(f: GridFunction, e: MixedExponents, spec: QuadratureSpec = QuadratureSpec()) -> float:
    """The grid L^{r,s} mixed norm by the periodic rectangle rule.

    For each y_k the x-norm is ((1/Kx) sum_j |f|^r)^(1/r) (max over j when
    r = inf); the same rule is then applied in y with exponent s.  Only
    e.gamma and e.delta are consulted.  With spec.refine_check set, the value
    is recomputed on the half-coarse grid (every second sample in each
    direction) and a QuadratureWarning is issued when the relative
    disagreement exceeds spec.rel_tol.
    """
    value = _lrs_on_samples(f.samples, e)
    # The half grid only stays uniform-periodic when both sizes are even.
    if spec.refine_check and f.Kx % 2 == 0 and f.Ky % 2 == 0:
        coarse = _lrs_on_samples(f.samples[:: 2, :: 2], e)
        denom = max(abs(value), abs(coarse), 1e-300)
        disagreement = abs(value - coarse) / denom
        if disagreement > spec.rel_tol:
            warnings.warn(
                QuadratureWarning(
                    f"half-grid value {coarse:.12g} vs {value:.12g} "
                    f"(relative disagreement {disagreement:.3e} > {spec.rel_tol:.3e}); "
                    "increase the oversampling factor"
                ),
                stacklevel=2,
            )
    return value


def _lrs_on_samples(samples: np.ndarray, e: MixedExponents) -> float:
    a = np.abs(samples)
    if e.gamma == 0.0:  # r = inf
        row = a.max(axis=0)
    else:
        row = _power_reduce(a, 1.0 / e.gamma, axis=0, mean=True)
    if e.delta == 0.0:  # s = inf
        return float(row.max())
    return float(_power_reduce(row, 1.0 / e.delta, axis=0, mean=True))


def holder_matrix_chain(
    A: CoefficientMatrix, e: MixedExponents, e_bar: MixedExponents
) -> tuple[float, float]:
    """Both sides of the dimension-power norm comparison, as a self-test primitive.

    For a first-slot chain (e.alpha >= e_bar.alpha, same beta) returns
    (||A||_{l^{p,q}}, M^(alpha - alpha_bar) * ||A||_{l^{p_bar,q}}); for a
    second-slot chain (same alpha, e.beta >= e_bar.beta) the comparison
    factor is N^(beta - beta_bar).  Asserts first <= second within 1e-12
    relative before returning.
    """
    if e.alpha >= e_bar.alpha and e.beta == e_bar.beta:
        factor = float(A.M) ** (e.alpha - e_bar.alpha)
    elif e.beta >= e_bar.beta and e.alpha == e_bar.alpha:
        factor = float(A.N) ** (e.beta - e_bar.beta)
    else:
        raise ValueError(
            "exponent pair must differ in exactly one slot, with e at least as "
            f"large there: got {e.as_tuple()} vs {e_bar.as_tuple()}"
        )
    first = lpq_norm(A, e)
    second = factor * lpq_norm(A, e_bar)
    if first > second * (1.0 + 1e-12):
        raise AssertionError(
            f"norm chain violated: {first!r} > {factor!r} * {lpq_norm(A, e_bar)!r}"
        )
    return first, second


# ----------------------------------------------------------------------------
# Shared JSON formats.  Matrices: {"M", "N", "entries": [[re, im], ...]} in
# row-major order (column index n fastest).  Grids: the analogous
# {"Kx", "Ky", "samples"} document.  Floats survive the round trip bit-exactly.
# ----------------------------------------------------------------------------


def _pairs(flat: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in flat]


def _unpairs(pairs: list, count: int, what: str) -> np.ndarray:
    if len(pairs) != count:
        raise ValueError(f"{what}: expected {count} [re, im] pairs, got {len(pairs)}")
    out = np.empty(count, dtype=np.complex128)
    for i, pair in enumerate(pairs):
        re, im = pair
        out[i] = complex(re, im)
    return out


def matrix_to_json(A: CoefficientMatrix) -> dict:
    return {"M": A.M, "N": A.N, "entries": _pairs(A.entries.ravel(order="C"))}


def matrix_from_json(doc: dict) -> CoefficientMatrix:
    M, N = int(doc["M"]), int(doc["N"])
    flat = _unpairs(doc["entries"], M * N, "matrix entries")
    return CoefficientMatrix(M=M, N=N, entries=flat.reshape(M, N))


def grid_to_json(f: GridFunction) -> dict:
    return {"Kx": f.Kx, "Ky": f.Ky, "samples": _pairs(f.samples.ravel(order="C"))}


def grid_from_json(doc: dict) -> GridFunction:
    Kx, Ky = int(doc["Kx"]), int(doc["Ky"])
    flat = _unpairs(doc["samples"], Kx * Ky, "grid samples")
    return GridFunction(Kx=Kx, Ky=Ky, samples=flat.reshape(Kx, Ky))


def save_matrix(path: str | Path, A: CoefficientMatrix) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(A)) + "\n")


def load_matrix(path: str | Path) -> CoefficientMatrix:
    return matrix_from_json(json.loads(Path(path).read_text()))


def save_grid(path: str | Path, f: GridFunction) -> None:
    Path(path).write_text(json.dumps(grid_to_json(f)) + "\n")


def load_grid(path: str | Path) -> GridFunction:
    return grid_from_json(json.loads(Path(path).read_text()))
