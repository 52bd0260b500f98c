from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
from loguru import logger

from group_splicing.design import GroupedDesign
from group_splicing.errors import InvalidConfigError
from group_splicing.linalg_core import SupportFit
from group_splicing.modes import Method
from group_splicing.selector.criteria import (
    DEFAULT_LOSS_FLOOR,
    CriterionRecord,
    bic_of,
    gic_of,
)

C_MAX_DEFAULT = 2
MAX_ITERATIONS_DEFAULT = 100


@dataclass(frozen=True, eq=False)
class SpliceState:
    """One iterate: active set A^k, inactive set I^k, the refit on A^k and its dual."""

    active: FrozenSet[int]
    inactive: FrozenSet[int]
    fit: SupportFit
    dual: np.ndarray
    iteration: int = 0

    @property
    def loss(self) -> float:
        return self.fit.loss

    @property
    def beta(self) -> np.ndarray:
        return self.fit.beta


@dataclass
class GSplicingConfig:
    model_size: int
    c_max: int = C_MAX_DEFAULT
    pi_T: Optional[float] = None  # None means default_threshold
    max_iterations: int = MAX_ITERATIONS_DEFAULT
    initial_active: Optional[FrozenSet[int]] = None

    def validate(self, num_groups: int):
        if not 1 <= self.model_size <= num_groups:
            raise InvalidConfigError(
                f"Model size T={self.model_size} must lie in [1, J={num_groups}]"
            )
        if not 1 <= self.c_max:
            raise InvalidConfigError(f"c_max must be at least 1, got {self.c_max}")
        if self.pi_T is not None and not self.pi_T >= 0:
            raise InvalidConfigError(f"pi_T must be nonnegative, got {self.pi_T}")
        if self.max_iterations < 1:
            raise InvalidConfigError(
                f"max_iterations must be at least 1, got {self.max_iterations}"
            )
        if self.initial_active is not None:
            if len(self.initial_active) != self.model_size:
                raise InvalidConfigError(
                    f"Initial active set has {len(self.initial_active)} groups, "
                    f"expected T={self.model_size}"
                )
            if any(not 0 <= j < num_groups for j in self.initial_active):
                raise InvalidConfigError(
                    f"Initial active set {sorted(self.initial_active)} "
                    f"references groups outside 0..{num_groups - 1}"
                )


@dataclass(eq=False)
class FitReport:
    support: Tuple[int, ...]
    model_size: int
    beta: np.ndarray
    beta_original: np.ndarray
    intercept: float
    loss: float
    gic: float
    bic: float
    num_predictors: int
    iterations: int
    loss_trace: List[float]
    exchange_sizes: List[int]
    pi_T: float
    method: Method = Method.GSPLICING
    trace: List[SpliceState] = field(default_factory=list, repr=False)
    path: List[CriterionRecord] = field(default_factory=list, repr=False)

    def criterion_record(self) -> CriterionRecord:
        return CriterionRecord(
            model_size=self.model_size,
            support=self.support,
            num_predictors=self.num_predictors,
            loss=self.loss,
            gic=self.gic,
            bic=self.bic,
        )


def make_fit_report(
    design: GroupedDesign,
    trace: List[SpliceState],
    exchange_sizes: List[int],
    pi_T: float,
    loss_floor: float = DEFAULT_LOSS_FLOOR,
) -> FitReport:
    final = trace[-1]
    support = tuple(sorted(final.active))
    if final.fit.near_zero(loss_floor):
        logger.warning(
            f"Loss {final.loss:.3g} at T={len(support)} is below the floor {loss_floor:.3g}; "
            f"criteria use the floor"
        )
    num_predictors = design.structure.num_predictors(support)
    beta_original = design.to_original_basis(final.beta)
    return FitReport(
        support=support,
        model_size=len(support),
        beta=final.beta,
        beta_original=beta_original,
        intercept=design.intercept_for(beta_original),
        loss=final.loss,
        gic=gic_of(final.loss, num_predictors, design.n, design.num_groups, loss_floor),
        bic=bic_of(final.loss, num_predictors, design.n, loss_floor),
        num_predictors=num_predictors,
        iterations=len(trace) - 1,
        loss_trace=[state.loss for state in trace],
        exchange_sizes=exchange_sizes,
        pi_T=pi_T,
        trace=trace,
    )
