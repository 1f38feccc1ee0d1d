"""Power-sum sensitivity layer and signed (long/short) dependence.

The quadratic indices generalize to power sums of any positive order
other than one, with effective numbers through the usual exponent; under
proportional ownership the matrix-level power sum factors into the two
marginal ones, for every order. For books with short positions,
normalizing by gross exposure and benchmarking against the net rank-one
matrix gives a gross-whitened dependence measure; it requires nonzero
aggregate net exposure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import TOL_NORM, OwnershipMatrix, _freeze, _label_tuple
from .errors import (
    AllZeroMatrix,
    AlphaNearOne,
    DimensionMismatch,
    InactiveGrossSupport,
    InternalConsistencyError,
    MarketNeutral,
    NegativeEntry,
    NonFiniteEntry,
    NotNormalized,
    OutOfRange,
)

#: Orders closer to one than this are rejected.
_ALPHA_GAP = 1e-6

#: Orders above this make the power sums numerically indistinguishable
#: from their largest term.
_ALPHA_MAX = 20.0


@dataclass(frozen=True)
class RenyiSummary:
    """Marginal and matrix power sums of one order with effective numbers."""

    alpha: float
    investor_power_sum: float
    stock_power_sum: float
    micro_power_sum: float
    effective_investors: float
    effective_stocks: float
    effective_cells: float


@dataclass(frozen=True, eq=False)
class SignedOwnership:
    """Long and short legs of a book, normalized by gross exposure.

    ``plus`` and ``minus`` are nonnegative with no common support and sum
    jointly to one. Gross marginals add the legs, net marginals subtract
    them; ``net_exposure`` is the common total of the net marginals.
    """

    plus: np.ndarray
    minus: np.ndarray
    investor_labels: tuple[str, ...] = None  # type: ignore[assignment]
    stock_labels: tuple[str, ...] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        plus = np.asarray(self.plus, dtype=float)
        minus = np.asarray(self.minus, dtype=float)
        if plus.ndim != 2 or plus.size == 0 or plus.shape != minus.shape:
            raise DimensionMismatch(
                f"legs must be equal-shape 2-d arrays, got {plus.shape} and {minus.shape}"
            )
        if not (np.all(np.isfinite(plus)) and np.all(np.isfinite(minus))):
            raise NonFiniteEntry("legs must be finite")
        if np.any(plus < 0) or np.any(minus < 0):
            raise NegativeEntry("legs must be nonnegative")
        if np.any((plus > 0) & (minus > 0)):
            raise NegativeEntry("a cell cannot be long and short at once")
        gross_total = float(plus.sum() + minus.sum())
        if abs(gross_total - 1.0) > TOL_NORM:
            raise NotNormalized(
                f"gross exposure sums to {gross_total!r}, expected 1 within {TOL_NORM:g}"
            )
        n, m = plus.shape
        object.__setattr__(self, "plus", _freeze(plus))
        object.__setattr__(self, "minus", _freeze(minus))
        object.__setattr__(
            self, "investor_labels", _label_tuple(self.investor_labels, n, "investor")
        )
        object.__setattr__(
            self, "stock_labels", _label_tuple(self.stock_labels, m, "stock")
        )

    @property
    def net(self) -> np.ndarray:
        return self.plus - self.minus

    @property
    def gross_investor_marginals(self) -> np.ndarray:
        return (self.plus + self.minus).sum(axis=1)

    @property
    def gross_stock_marginals(self) -> np.ndarray:
        return (self.plus + self.minus).sum(axis=0)

    @property
    def net_investor_marginals(self) -> np.ndarray:
        return self.net.sum(axis=1)

    @property
    def net_stock_marginals(self) -> np.ndarray:
        return self.net.sum(axis=0)

    @property
    def net_exposure(self) -> float:
        eta_p = float(self.net_investor_marginals.sum())
        eta_s = float(self.net_stock_marginals.sum())
        if abs(eta_p - eta_s) > 1e-12:
            raise InternalConsistencyError("net exposure differs across sides")
        return eta_p


def signed_from_raw(
    raw_plus: "np.typing.ArrayLike",
    raw_minus: "np.typing.ArrayLike",
    investor_labels: Sequence[str] | None = None,
    stock_labels: Sequence[str] | None = None,
) -> SignedOwnership:
    """Normalize raw long and short exposures by total gross exposure."""
    plus = np.asarray(raw_plus, dtype=float)
    minus = np.asarray(raw_minus, dtype=float)
    if plus.shape != minus.shape:
        raise DimensionMismatch(
            f"legs must share a shape, got {plus.shape} and {minus.shape}"
        )
    if not (np.all(np.isfinite(plus)) and np.all(np.isfinite(minus))):
        raise NonFiniteEntry("raw legs must be finite")
    if np.any(plus < 0) or np.any(minus < 0):
        raise NegativeEntry("raw legs must be nonnegative")
    gross = float(plus.sum() + minus.sum())
    if gross <= 0.0:
        raise AllZeroMatrix("gross exposure is zero")
    return SignedOwnership(plus / gross, minus / gross, investor_labels, stock_labels)


def renyi_summary(matrix: OwnershipMatrix, alpha: float) -> RenyiSummary:
    """Marginal and matrix power sums of order ``alpha``.

    Order two recovers the quadratic indices exactly. Orders must lie in
    (0, 20] and keep a minimal distance from one, where the family
    degenerates.
    """
    if not np.isfinite(alpha) or alpha <= 0 or alpha > _ALPHA_MAX:
        raise OutOfRange(f"order must lie in (0, {_ALPHA_MAX:g}], got {alpha!r}")
    if abs(alpha - 1.0) < _ALPHA_GAP:
        raise AlphaNearOne(f"order {alpha!r} is too close to 1")
    p = matrix.entries.sum(axis=1)
    s = matrix.entries.sum(axis=0)
    inv_sum = float(np.sum(p**alpha))
    stk_sum = float(np.sum(s**alpha))
    cell_sum = float(np.sum(matrix.entries**alpha))
    exponent = 1.0 / (1.0 - alpha)
    return RenyiSummary(
        alpha=float(alpha),
        investor_power_sum=inv_sum,
        stock_power_sum=stk_sum,
        micro_power_sum=cell_sum,
        effective_investors=inv_sum**exponent,
        effective_stocks=stk_sum**exponent,
        effective_cells=cell_sum**exponent,
    )


def signed_dependence(book: SignedOwnership) -> float:
    """Gross-whitened dependence of a signed book from its net benchmark.

    The benchmark is the rank-one matrix built from the net marginals and
    scaled by the inverse aggregate net exposure; it shares the book's net
    marginals. The plain sum form and the whitened Frobenius form are both
    computed and must agree.
    """
    eta = book.net_exposure
    if abs(eta) < 1e-10:
        raise MarketNeutral(
            "aggregate net exposure is zero; the net rank-one benchmark is undefined"
        )
    gross_p = book.gross_investor_marginals
    gross_s = book.gross_stock_marginals
    if np.any(gross_p <= 0) or np.any(gross_s <= 0):
        raise InactiveGrossSupport(
            "every investor and stock needs positive gross exposure"
        )
    net = book.net
    benchmark = np.outer(book.net_investor_marginals, book.net_stock_marginals) / eta
    dev = net - benchmark

    sum_form = float(np.sum(dev * dev / np.outer(gross_p, gross_s)))
    whitened = dev / np.sqrt(np.outer(gross_p, gross_s))
    frob_form = float(np.sum(whitened * whitened))
    if abs(sum_form - frob_form) > 1e-10:
        raise InternalConsistencyError("signed dependence forms disagree")
    return sum_form
