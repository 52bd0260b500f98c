from dataclasses import dataclass, field
from typing import List

import numpy as np
from loguru import logger
from scipy.linalg import solve_triangular

from group_splicing.design.groups import GroupStructure
from group_splicing.errors import RankError, ShapeError

RANK_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class GroupedDesign:
    """A centered, groupwise-orthonormalized regression problem.

    For every group j, X[:, G_j].T @ X[:, G_j] / n is the identity.
    `group_transforms[j]` maps orthonormal-basis coefficients of group j back to
    the original (centered) basis; `group_factors[j]` is its inverse."""

    X: np.ndarray
    y: np.ndarray
    structure: GroupStructure
    column_means: np.ndarray
    y_mean: float
    group_transforms: List[np.ndarray]
    group_factors: List[np.ndarray] = field(repr=False)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def num_groups(self) -> int:
        return self.structure.num_groups

    def to_original_basis(self, beta: np.ndarray) -> np.ndarray:
        original = np.zeros_like(beta, dtype=float)
        for group, transform in zip(self.structure.groups, self.group_transforms):
            original[group] = transform @ beta[group]
        return original

    def to_orthonormal_basis(self, beta_original: np.ndarray) -> np.ndarray:
        orthonormal = np.zeros_like(beta_original, dtype=float)
        for group, factor in zip(self.structure.groups, self.group_factors):
            orthonormal[group] = factor @ beta_original[group]
        return orthonormal

    def intercept_for(self, beta_original: np.ndarray) -> float:
        return float(self.y_mean - self.column_means @ beta_original)


def preprocess(
    X_raw: np.ndarray, y_raw: np.ndarray, structure: GroupStructure
) -> GroupedDesign:
    """Center X and y, then orthonormalize every group block by a thin QR so
    that X_G.T @ X_G / n = I. R factors are sign-fixed to a nonnegative diagonal."""
    X_raw = np.asarray(X_raw, dtype=float)
    y_raw = np.asarray(y_raw, dtype=float)
    if X_raw.ndim != 2 or y_raw.ndim != 1:
        raise ShapeError(
            f"Expected a 2-d design and 1-d response, got {X_raw.shape} and {y_raw.shape}"
        )
    n, p = X_raw.shape
    if y_raw.shape[0] != n:
        raise ShapeError(f"Design has {n} rows but response has {y_raw.shape[0]}")
    if p != structure.p:
        raise ShapeError(f"Design has {p} columns but groups cover {structure.p}")
    if n < 2:
        raise ShapeError(f"At least two samples are required, got n={n}")

    column_means = X_raw.mean(axis=0)
    y_mean = float(y_raw.mean())
    centered = X_raw - column_means
    y = y_raw - y_mean

    X = np.empty_like(centered)
    transforms = []
    factors = []
    sqrt_n = np.sqrt(n)
    for group_id, group in enumerate(structure.groups):
        block = centered[:, group]
        _check_group_rank(block, group_id)
        q, r = np.linalg.qr(block, mode="reduced")
        signs = np.sign(np.diag(r))
        signs[signs == 0] = 1.0
        q = q * signs
        r = signs[:, None] * r

        X[:, group] = q * sqrt_n
        factor = r / sqrt_n
        factors.append(factor)
        transforms.append(
            solve_triangular(factor, np.eye(len(group)), lower=False)
        )

    for array in (X, y, column_means):
        array.setflags(write=False)
    logger.debug(
        f"Preprocessed design n={n}, p={p}, J={structure.num_groups}, "
        f"p_min={structure.p_min}, p_max={structure.p_max}"
    )
    return GroupedDesign(
        X=X,
        y=y,
        structure=structure,
        column_means=column_means,
        y_mean=y_mean,
        group_transforms=transforms,
        group_factors=factors,
    )


def _check_group_rank(block: np.ndarray, group_id: int):
    singular_values = np.linalg.svd(block, compute_uv=False)
    largest = singular_values.max() if singular_values.size else 0.0
    if largest == 0.0 or singular_values.min() < RANK_TOLERANCE * largest:
        raise RankError(
            f"Group {group_id} is column-rank-deficient after centering "
            f"(singular values {singular_values})"
        )
