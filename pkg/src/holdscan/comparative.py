"""Structural operations with exact predicted index changes.

Merging two investors, removing a stock with renormalization, and adding
a market-weight investor all change the headline indices by closed-form
amounts, which this module computes alongside a direct recomputation and
refuses to return if the two disagree. The equal-marginal family with a
single free cell shows that the marginals pin down neither the cell
concentration nor the dependence index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import OwnershipMatrix, TOL_NORM, marginals, require_active, restrict_active
from .dependence import dependence_index, merger_delta, _row_pair
from .errors import (
    IndexOutOfRange,
    InternalConsistencyError,
    OutOfRange,
    RemovingEverything,
)
from .indices import micro_concentration

#: Agreement required between predicted and recomputed indices.
_LAW_TOL = 1e-9


@dataclass(frozen=True)
class HeadlineIndices:
    """The four matrix-level diagnostics moved by structural operations."""

    investor_herfindahl: float
    stock_herfindahl: float
    micro: float
    dependence: float


@dataclass(frozen=True)
class PredictedIndices:
    """Closed-form predictions; None where no law exists."""

    investor_herfindahl: float | None
    stock_herfindahl: float | None
    micro: float | None
    dependence: float | None


@dataclass(frozen=True, eq=False)
class OperationDelta:
    """Before/after diagnostics of a structural operation.

    ``predicted_after`` holds the closed-form values and must match
    ``after`` wherever it is not None; the constructor enforces that.
    ``dropped_investors`` lists labels removed because no wealth remained.
    """

    before: HeadlineIndices
    after: HeadlineIndices
    predicted_after: PredictedIndices
    matrix_after: OwnershipMatrix
    dropped_investors: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        pairs = (
            (self.predicted_after.investor_herfindahl, self.after.investor_herfindahl),
            (self.predicted_after.stock_herfindahl, self.after.stock_herfindahl),
            (self.predicted_after.micro, self.after.micro),
            (self.predicted_after.dependence, self.after.dependence),
        )
        for predicted, actual in pairs:
            if predicted is not None and abs(predicted - actual) > _LAW_TOL:
                raise InternalConsistencyError(
                    f"closed-form prediction {predicted!r} disagrees with "
                    f"recomputed value {actual!r}"
                )


def headline(matrix: OwnershipMatrix) -> HeadlineIndices:
    """Direct recomputation of the four headline indices.

    Zero-mass investors or stocks contribute nothing to any index, so the
    dependence part is evaluated on the active restriction.
    """
    marg = marginals(matrix)
    return HeadlineIndices(
        investor_herfindahl=float(marg.p @ marg.p),
        stock_herfindahl=float(marg.s @ marg.s),
        micro=micro_concentration(matrix),
        dependence=dependence_index(restrict_active(matrix)).index,
    )


def merge_investors(matrix: OwnershipMatrix, a: int, b: int) -> OperationDelta:
    """Sum two investor rows and report the exact index changes.

    Investor concentration rises by twice the product of the merged
    masses, stock concentration is unchanged, cell concentration rises by
    twice the overlap of the merged rows, and dependence falls by the
    merger amount.
    """
    marg = require_active(matrix)
    a, b = _row_pair(matrix.n, a, b)
    before = headline(matrix)

    lo, hi = min(a, b), max(a, b)
    e = matrix.entries
    rows = [e[i] for i in range(matrix.n) if i != hi]
    merged_row = e[a] + e[b]
    rows[lo] = merged_row
    labels = [lab for i, lab in enumerate(matrix.investor_labels) if i != hi]
    labels[lo] = _unique_label(
        matrix.investor_labels[a] + "+" + matrix.investor_labels[b], labels[:lo] + labels[lo + 1 :]
    )
    merged = OwnershipMatrix(np.vstack(rows), tuple(labels), matrix.stock_labels)

    predicted = PredictedIndices(
        investor_herfindahl=before.investor_herfindahl + 2.0 * marg.p[a] * marg.p[b],
        stock_herfindahl=before.stock_herfindahl,
        micro=before.micro + 2.0 * float(e[a] @ e[b]),
        dependence=before.dependence - merger_delta(matrix, a, b),
    )
    return OperationDelta(
        before=before,
        after=headline(merged),
        predicted_after=predicted,
        matrix_after=merged,
    )


def remove_stock(matrix: OwnershipMatrix, stock: int) -> OperationDelta:
    """Drop one stock column and renormalize the remaining book.

    The new cell concentration follows the closed form
    (old value minus the dropped column's squared cells) divided by the
    squared remaining mass. Investors left with no wealth are dropped and
    reported.
    """
    marg = marginals(matrix)
    j0 = int(stock)
    if j0 < 0 or j0 >= matrix.m:
        raise IndexOutOfRange(f"stock index {j0} outside 0..{matrix.m - 1}")
    weight = 1.0 - float(marg.s[j0])
    if weight <= TOL_NORM:
        raise RemovingEverything(
            f"stock {matrix.stock_labels[j0]!r} carries all remaining mass"
        )
    before = headline(matrix)

    column = matrix.entries[:, j0]
    kept_cols = [j for j in range(matrix.m) if j != j0]
    reduced = matrix.entries[:, kept_cols] / weight
    new_p = reduced.sum(axis=1)
    keep_rows = new_p >= TOL_NORM
    dropped = tuple(
        lab for lab, keep in zip(matrix.investor_labels, keep_rows) if not keep
    )
    reduced = reduced[keep_rows]
    inv_labels = tuple(
        lab for lab, keep in zip(matrix.investor_labels, keep_rows) if keep
    )
    stk_labels = tuple(matrix.stock_labels[j] for j in kept_cols)
    after_matrix = OwnershipMatrix(reduced, inv_labels, stk_labels)

    new_s = marg.s[kept_cols] / weight
    kept_p = (marg.p - column)[keep_rows] / weight
    predicted = PredictedIndices(
        investor_herfindahl=float(kept_p @ kept_p),
        stock_herfindahl=float(new_s @ new_s),
        micro=(before.micro - float(column @ column)) / weight**2,
        dependence=None,
    )
    return OperationDelta(
        before=before,
        after=headline(after_matrix),
        predicted_after=predicted,
        matrix_after=after_matrix,
        dropped_investors=dropped,
    )


def dilute(matrix: OwnershipMatrix, weight: float) -> OperationDelta:
    """Add a market-weight investor holding the given share of wealth.

    All four indices obey closed forms; in particular dependence shrinks
    linearly in the added mass, since the new investor adds none.
    """
    if not np.isfinite(weight) or not 0.0 < weight < 1.0:
        raise OutOfRange(f"dilution weight must lie strictly in (0, 1), got {weight!r}")
    marg = require_active(matrix)
    before = headline(matrix)

    stacked = np.vstack([(1.0 - weight) * matrix.entries, weight * marg.s])
    label = _unique_label(f"MARKET({weight:g})", matrix.investor_labels)
    diluted = OwnershipMatrix(
        stacked, matrix.investor_labels + (label,), matrix.stock_labels
    )
    shrink = (1.0 - weight) ** 2
    predicted = PredictedIndices(
        investor_herfindahl=shrink * before.investor_herfindahl + weight**2,
        stock_herfindahl=before.stock_herfindahl,
        micro=shrink * before.micro + weight**2 * before.stock_herfindahl,
        dependence=(1.0 - weight) * before.dependence,
    )
    return OperationDelta(
        before=before,
        after=headline(diluted),
        predicted_after=predicted,
        matrix_after=diluted,
    )


def nonid_family(t: float) -> tuple[OwnershipMatrix, float, float]:
    """Equal-marginal 2x2 family showing marginals identify neither index.

    Every member has uniform marginals, yet the cell concentration and the
    dependence index vary quadratically in the free cell. Returns the
    matrix together with both formula values, after checking them against
    direct recomputation.
    """
    if not np.isfinite(t) or not 0.0 <= t <= 0.5:
        raise OutOfRange(f"family parameter must lie in [0, 0.5], got {t!r}")
    entries = np.array([[t, 0.5 - t], [0.5 - t, t]])
    matrix = OwnershipMatrix(entries)
    micro_formula = 0.25 + 4.0 * (t - 0.25) ** 2
    dependence_formula = 16.0 * (t - 0.25) ** 2
    if abs(micro_concentration(matrix) - micro_formula) > 1e-12:
        raise InternalConsistencyError("family concentration formula failed")
    if abs(dependence_index(matrix).index - dependence_formula) > 1e-12:
        raise InternalConsistencyError("family dependence formula failed")
    return matrix, micro_formula, dependence_formula


def _unique_label(candidate: str, taken: "tuple[str, ...] | list[str]") -> str:
    while candidate in taken:
        candidate += "*"
    return candidate
