"""Linearized transmission through the ownership network.

Two first-order mechanisms are driven by the same whitened residual
operator. Liquidation shocks on the investor side map to size-normalized
price pressure on the stock side: the market-wide shock component passes
through untouched while the idiosyncratic component is damped by at most
the dominant overlap mode. Centered stock-return dispersion maps to
benchmark-relative investor returns: the worst case is again governed by
the dominant mode, and under isotropic centered dispersion the expected
active variance equals the dependence index times the dispersion scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import OwnershipMatrix, _freeze, require_active
from .dependence import dependence_index
from .errors import (
    DimensionMismatch,
    InternalConsistencyError,
    NonFiniteEntry,
    NotCentered,
    OutOfRange,
)
from .spectral import whiten

#: Slack on identities exact in real arithmetic.
_EXACT_TOL = 1e-9

#: Centering tolerance on the capitalization-weighted mean of returns.
_CENTER_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FireSaleResult:
    """Decomposed price impact of an investor liquidation shock.

    ``severity`` is the capitalization-weighted squared relative price
    impact. It splits exactly into the market-wide term plus the
    idiosyncratic term, and is bounded by the market-wide term plus the
    squared dominant overlap mode times the idiosyncratic shock energy.
    """

    delta_parallel: np.ndarray
    delta_perp: np.ndarray
    pressure: np.ndarray
    impact: np.ndarray
    severity: float
    parallel_term: float
    perp_term: float
    bound: float

    def __post_init__(self) -> None:
        for name in ("delta_parallel", "delta_perp", "pressure", "impact"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))


@dataclass(frozen=True, eq=False)
class ActiveVarianceResult:
    """Benchmark-relative active returns and their size-weighted variance."""

    alpha: np.ndarray
    variance: float
    worst_case_bound: float
    isotropic_capacity: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _freeze(self.alpha))


def fire_sale(matrix: OwnershipMatrix, delta: "np.typing.ArrayLike") -> FireSaleResult:
    """Propagate a liquidation shock and decompose its price impact.

    ``delta[i]`` is investor i's liquidation fraction (any sign). The
    exact severity split and the spectral bound are validated before
    returning.
    """
    marg = require_active(matrix)
    shock = np.asarray(delta, dtype=float)
    if shock.shape != (matrix.n,):
        raise DimensionMismatch(
            f"shock length {shock.shape} does not match {matrix.n} investors"
        )
    if not np.all(np.isfinite(shock)):
        raise NonFiniteEntry("shock must be finite")

    p, s = marg.p, marg.s
    res = whiten(matrix)
    mean = float(p @ shock)
    parallel = np.full(matrix.n, mean)
    perp = shock - parallel
    if abs(float(p @ perp)) > 1e-12 * max(1.0, abs(mean)):
        raise InternalConsistencyError("idiosyncratic component is not mass-centered")

    pressure = matrix.entries.T @ shock
    impact = pressure / s
    severity = float(s @ (impact * impact))
    parallel_term = float(p @ (parallel * parallel))
    perp_whitened = res.residual.T @ (np.sqrt(p) * perp)
    perp_term = float(perp_whitened @ perp_whitened)
    bound = parallel_term + res.rho**2 * float(p @ (perp * perp))

    if abs(severity - (parallel_term + perp_term)) > _EXACT_TOL:
        raise InternalConsistencyError("severity split violates the exact identity")
    if severity > bound + _EXACT_TOL:
        raise InternalConsistencyError("severity exceeds its spectral bound")
    return FireSaleResult(
        delta_parallel=parallel,
        delta_perp=perp,
        pressure=pressure,
        impact=impact,
        severity=severity,
        parallel_term=parallel_term,
        perp_term=perp_term,
        bound=bound,
    )


def active_variance(
    matrix: OwnershipMatrix,
    returns: "np.typing.ArrayLike",
    *,
    project: bool = False,
    dispersion: float | None = None,
) -> ActiveVarianceResult:
    """Size-weighted variance of benchmark-relative investor returns.

    ``returns`` must be capitalization-centered; pass ``project=True`` to
    subtract the weighted mean first. The active return vector is computed
    both from portfolio profiles and through the residual operator, and
    the two must agree. With ``dispersion`` given, the isotropic expected
    capacity is attached.
    """
    marg = require_active(matrix)
    r = np.asarray(returns, dtype=float)
    if r.shape != (matrix.m,):
        raise DimensionMismatch(
            f"returns length {r.shape} does not match {matrix.m} stocks"
        )
    if not np.all(np.isfinite(r)):
        raise NonFiniteEntry("returns must be finite")
    p, s = marg.p, marg.s
    if project:
        r = r - float(s @ r)
    centered = float(s @ r)
    if abs(centered) > _CENTER_TOL:
        raise NotCentered(
            f"capitalization-weighted mean of returns is {centered!r}, "
            f"expected 0 within {_CENTER_TOL:g}"
        )

    res = whiten(matrix)
    q = matrix.entries / p[:, None]
    alpha_profile = (q - s[None, :]) @ r
    alpha_operator = (matrix.entries - np.outer(p, s)) @ r / p
    if np.max(np.abs(alpha_profile - alpha_operator)) > _EXACT_TOL:
        raise InternalConsistencyError("active-return computations disagree")

    variance = float(p @ (alpha_profile * alpha_profile))
    whitened_returns = np.sqrt(s) * r
    operator_variance = float(np.sum((res.residual @ whitened_returns) ** 2))
    if abs(variance - operator_variance) > _EXACT_TOL:
        raise InternalConsistencyError("variance disagrees with its operator form")
    bound = res.rho**2 * float(s @ (r * r))
    if variance > bound + _EXACT_TOL:
        raise InternalConsistencyError("variance exceeds its spectral bound")

    capacity = None
    if dispersion is not None:
        capacity = isotropic_capacity(matrix, dispersion)
    return ActiveVarianceResult(
        alpha=alpha_profile,
        variance=variance,
        worst_case_bound=bound,
        isotropic_capacity=capacity,
    )


def isotropic_capacity(matrix: OwnershipMatrix, sigma: float) -> float:
    """Expected active variance under isotropic centered return dispersion.

    Equals the squared dispersion scale times the dependence index;
    cross-checked against the covariance trace formula on the residual
    operator.
    """
    if not np.isfinite(sigma) or sigma < 0:
        raise OutOfRange(f"dispersion must be a nonnegative scalar, got {sigma!r}")
    marg = require_active(matrix)
    value = sigma**2 * dependence_index(matrix).index
    ell = whiten(matrix).residual
    v = np.sqrt(marg.s)
    covariance = sigma**2 * (np.eye(matrix.m) - np.outer(v, v))
    trace = float(np.trace(ell @ covariance @ ell.T))
    if abs(value - trace) > _EXACT_TOL * max(1.0, abs(value)):
        raise InternalConsistencyError("capacity disagrees with the trace formula")
    return value
