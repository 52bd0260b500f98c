"""Least-squares primitives on a group support: refits, residuals, duals, loss."""
from dataclasses import dataclass
from typing import FrozenSet, Iterable

import numpy as np
from scipy.linalg import solve_triangular

from group_splicing.design import GroupedDesign, GroupStructure
from group_splicing.errors import (
    OrthogonalityError,
    ShapeError,
    SingularSupportError,
    SupportTooLargeError,
)

PIVOT_TOLERANCE = 1e-10
ORTHOGONALITY_TOLERANCE = 1e-8
NEAR_ZERO_LOSS = 1e-12


@dataclass(frozen=True, eq=False)
class SupportFit:
    support: FrozenSet[int]
    beta: np.ndarray
    residual: np.ndarray
    loss: float

    def near_zero(self, loss_floor: float = NEAR_ZERO_LOSS) -> bool:
        """The loss is too small for a safe logarithm."""
        return self.loss < loss_floor


def loss_of(design: GroupedDesign, beta: np.ndarray) -> float:
    """L(beta) = ||y - X beta||^2 / (2n)."""
    if beta.shape != (design.p,):
        raise ShapeError(f"Coefficient vector has shape {beta.shape}, expected ({design.p},)")
    residual = design.y - design.X @ beta
    return float(residual @ residual) / (2 * design.n)


def fit_least_squares(design: GroupedDesign, support: Iterable[int]) -> SupportFit:
    """Exact least squares restricted to the columns of `support`, by a QR of
    the n x #{support} block."""
    support = frozenset(int(j) for j in support)
    if support and (min(support) < 0 or max(support) >= design.num_groups):
        raise ShapeError(
            f"Support {sorted(support)} is not a subset of 0..{design.num_groups - 1}"
        )
    columns = design.structure.columns_of(support)
    n = design.n
    beta = np.zeros(design.p)
    if columns.size == 0:
        residual = design.y.copy()
        return _make_fit(support, beta, residual, n)
    if columns.size >= n:
        raise SupportTooLargeError(
            f"Support {sorted(support)} holds {columns.size} predictors; "
            f"at most {n - 1} can be fit with n={n}"
        )

    block = design.X[:, columns]
    q, r = np.linalg.qr(block, mode="reduced")
    pivots = np.abs(np.diag(r))
    scale = np.linalg.norm(block) / np.sqrt(columns.size)
    if pivots.min() < PIVOT_TOLERANCE * scale:
        raise SingularSupportError(
            f"Gram matrix of support {sorted(support)} is numerically singular "
            f"(smallest pivot {pivots.min():.3e}, scale {scale:.3e})"
        )
    coefficients = solve_triangular(r, q.T @ design.y, lower=False)
    beta[columns] = coefficients
    residual = design.y - block @ coefficients
    return _make_fit(support, beta, residual, n)


def dual_on_inactive(design: GroupedDesign, fit: SupportFit) -> np.ndarray:
    """d_G = X_G^T (y - X beta) / n on inactive groups, zero on active ones."""
    if fit.residual.shape != (design.n,):
        raise ShapeError(
            f"Residual has shape {fit.residual.shape}, expected ({design.n},)"
        )
    dual = design.X.T @ fit.residual / design.n
    active_columns = design.structure.columns_of(fit.support)
    if active_columns.size:
        tolerance = ORTHOGONALITY_TOLERANCE * (
            1.0 + np.linalg.norm(design.y) / np.sqrt(design.n)
        )
        worst = np.abs(dual[active_columns]).max()
        if worst > tolerance:
            raise OrthogonalityError(
                f"Residual is not orthogonal to the support columns "
                f"(max |X_A^T r|/n = {worst:.3e})"
            )
        dual[active_columns] = 0.0
    return dual


def group_sq_norms(structure: GroupStructure, vector: np.ndarray) -> np.ndarray:
    return np.bincount(
        structure.group_of_column,
        weights=vector * vector,
        minlength=structure.num_groups,
    )


def backward_sacrifices(structure: GroupStructure, beta: np.ndarray) -> np.ndarray:
    """Loss increase from zeroing each group of beta: ||beta_G||^2 / 2."""
    return group_sq_norms(structure, beta) / 2


def forward_sacrifices(structure: GroupStructure, dual: np.ndarray) -> np.ndarray:
    """Loss decrease from optimally adding each inactive group: ||d_G||^2 / 2."""
    return group_sq_norms(structure, dual) / 2


def _make_fit(support, beta, residual, n) -> SupportFit:
    for array in (beta, residual):
        array.setflags(write=False)
    return SupportFit(
        support=support,
        beta=beta,
        residual=residual,
        loss=float(residual @ residual) / (2 * n),
    )
