from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from group_splicing.design import GroupedDesign
from group_splicing.errors import InvalidConfigError
from group_splicing.linalg_core import loss_of
from group_splicing.modes import Criterion
from group_splicing.selector.criteria import default_loss_floor, default_tmax
from group_splicing.splicing.state import (
    C_MAX_DEFAULT,
    MAX_ITERATIONS_DEFAULT,
    GSplicingConfig,
)

T_MIN_DEFAULT = 1


@dataclass(frozen=True)
class SelectorConfig:
    t_min: int = T_MIN_DEFAULT
    t_max: Optional[int] = None  # None means default_tmax
    c_max: int = C_MAX_DEFAULT
    criterion: Criterion = Criterion.GIC
    loss_floor: Optional[float] = None  # None means default_loss_floor
    max_iterations: int = MAX_ITERATIONS_DEFAULT
    pi_T: Optional[float] = None
    refine_terminal: bool = True

    def resolve(self, design: GroupedDesign) -> "SelectorConfig":
        """Fill in data-dependent defaults and validate against the design."""
        t_max = self.t_max
        if t_max is None:
            t_max = default_tmax(
                n=design.n,
                p=design.p,
                p_min=design.structure.p_min,
                num_groups=design.num_groups,
            )
        loss_floor = self.loss_floor
        if loss_floor is None:
            loss_floor = default_loss_floor(loss_of(design, np.zeros(design.p)))

        resolved = replace(self, t_max=t_max, loss_floor=loss_floor)
        resolved.validate(design.num_groups)
        return resolved

    def validate(self, num_groups: int):
        if self.t_max is None or not 1 <= self.t_min <= self.t_max <= num_groups:
            raise InvalidConfigError(
                f"Model-size bounds must satisfy 1 <= t_min <= t_max <= J={num_groups}, "
                f"got t_min={self.t_min}, t_max={self.t_max}"
            )
        if self.loss_floor is None or not self.loss_floor > 0:
            raise InvalidConfigError(
                f"loss_floor must be positive, got {self.loss_floor}"
            )
        if self.c_max < 1:
            raise InvalidConfigError(f"c_max must be at least 1, got {self.c_max}")

    def splicing_config(self, model_size: int, initial_active=None) -> GSplicingConfig:
        return GSplicingConfig(
            model_size=model_size,
            c_max=self.c_max,
            pi_T=self.pi_T,
            max_iterations=self.max_iterations,
            initial_active=initial_active,
        )
