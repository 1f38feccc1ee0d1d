"""Whitened spectral analysis of ownership overlap.

Scaling rows by inverse square-root investor mass and columns by inverse
square-root stock mass turns the share matrix into a contraction whose
top singular value is exactly one, with the square-root marginal vectors
as the fixed singular pair. Subtracting that rank-one mode leaves a
residual operator carrying every nonproportional feature: its squared
singular values sum to the dependence index, and its largest singular
value is the dominant overlap mode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import OwnershipMatrix, _freeze, require_active
from .dependence import dependence_index
from .errors import InternalConsistencyError

#: Off-diagonal convergence threshold of the one-sided Jacobi sweep,
#: relative to the geometric mean of the paired column norms.
_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100

#: Slack on identities that are exact in real arithmetic.
_SPECTRAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralResidual:
    """Whitened matrix, rank-one market mode, residual, and spectrum.

    ``whitened`` is the rescaled share matrix; ``row_unit``/``col_unit``
    are the square-root marginal unit vectors forming its top singular
    pair; ``residual`` is the whitened matrix minus that rank-one mode.
    ``singular_values`` lists all singular values of the whitened matrix
    in descending order, and ``rho`` is the second one (zero when the
    matrix has a single row or column).
    """

    whitened: np.ndarray
    residual: np.ndarray
    row_unit: np.ndarray
    col_unit: np.ndarray
    singular_values: tuple[float, ...]
    rho: float

    def __post_init__(self) -> None:
        for name in ("whitened", "residual", "row_unit", "col_unit"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))


def whiten(matrix: OwnershipMatrix) -> SpectralResidual:
    """Whiten an active share matrix and extract its singular structure.

    Validates the defining identities before returning: the square-root
    marginals are a unit singular pair at value one, the residual
    annihilates them, and the residual's squared Frobenius norm matches
    the tail of the squared spectrum.
    """
    marg = require_active(matrix)
    u = np.sqrt(marg.p)
    v = np.sqrt(marg.s)
    k = matrix.entries / np.outer(u, v)
    ell = k - np.outer(u, v)
    sigma = _jacobi_singular_values(k)

    if abs(float(u @ u) - 1.0) > 2e-12 or abs(float(v @ v) - 1.0) > 2e-12:
        raise InternalConsistencyError("square-root marginals are not unit vectors")
    if abs(sigma[0] - 1.0) > _SPECTRAL_TOL:
        raise InternalConsistencyError(
            f"top singular value {sigma[0]!r} is not 1 within {_SPECTRAL_TOL:g}"
        )
    if sigma[-1] < -_SPECTRAL_TOL or sigma[0] > 1.0 + _SPECTRAL_TOL:
        raise InternalConsistencyError("singular values escape [0, 1]")
    if np.max(np.abs(k @ v - u)) > _SPECTRAL_TOL or np.max(np.abs(k.T @ u - v)) > _SPECTRAL_TOL:
        raise InternalConsistencyError("square-root marginals are not a singular pair")
    if np.max(np.abs(ell @ v)) > _SPECTRAL_TOL or np.max(np.abs(ell.T @ u)) > _SPECTRAL_TOL:
        raise InternalConsistencyError("residual does not annihilate the market mode")
    tail = float(np.sum(np.square(sigma[1:])))
    if abs(float(np.sum(ell * ell)) - tail) > _SPECTRAL_TOL:
        raise InternalConsistencyError("residual norm disagrees with spectrum tail")

    rho_val = float(sigma[1]) if len(sigma) > 1 else 0.0
    return SpectralResidual(
        whitened=k,
        residual=ell,
        row_unit=u,
        col_unit=v,
        singular_values=tuple(float(x) for x in sigma),
        rho=rho_val,
    )


def rho(matrix: OwnershipMatrix) -> float:
    """Dominant overlap mode: second singular value of the whitened matrix."""
    return whiten(matrix).rho


def spectral_identity_gap(matrix: OwnershipMatrix) -> float:
    """Absolute gap between the dependence index and the spectrum tail.

    A numerical self-diagnostic; both sides are equal in real arithmetic.
    """
    res = whiten(matrix)
    tail = float(np.sum(np.square(res.singular_values[1:])))
    return abs(dependence_index(matrix).index - tail)


def _jacobi_singular_values(matrix: np.ndarray) -> np.ndarray:
    """Singular values by one-sided Jacobi rotations, descending.

    Works on whichever orientation has fewer columns. Each sweep visits
    column pairs in a fixed order and rotates them to orthogonality; the
    sweep loop stops once every normalized off-diagonal inner product is
    below the threshold. Deterministic and accurate for the small, nearly
    rank-deficient matrices produced by whitening.
    """
    work = matrix if matrix.shape[0] >= matrix.shape[1] else matrix.T
    work = np.array(work, dtype=float)
    ncols = work.shape[1]
    if ncols == 1:
        return np.array([float(np.linalg.norm(work[:, 0]))])

    for _ in range(_JACOBI_MAX_SWEEPS):
        worst = 0.0
        for i in range(ncols - 1):
            for j in range(i + 1, ncols):
                x = work[:, i]
                y = work[:, j]
                a = float(x @ x)
                b = float(y @ y)
                d = float(x @ y)
                scale = np.sqrt(a * b)
                if scale <= 0.0:
                    continue
                rel = abs(d) / scale
                if rel > worst:
                    worst = rel
                if rel <= _JACOBI_TOL:
                    continue
                tau = (b - a) / (2.0 * d)
                sign = 1.0 if tau >= 0 else -1.0
                t = sign / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                rotated_i = c * x - s * y
                rotated_j = s * x + c * y
                work[:, i] = rotated_i
                work[:, j] = rotated_j
        if worst <= _JACOBI_TOL:
            break
    else:
        raise InternalConsistencyError("Jacobi sweep failed to orthogonalize columns")

    values = np.sqrt(np.sum(work * work, axis=0))
    values.sort()
    return values[::-1]
