"""Information criteria and model-size defaults. Logarithms are natural throughout."""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from group_splicing.errors import DomainError
from group_splicing.modes import Criterion

DEFAULT_LOSS_FLOOR = 1e-12


def nearest_int(value: float) -> int:
    """[value]: nearest integer, halves rounded away from zero."""
    return int(math.copysign(math.floor(abs(value) + 0.5), value))


def _log_log(n: int) -> float:
    if n <= math.e:
        raise DomainError(f"log(log n) is undefined or nonpositive for n={n}")
    return math.log(math.log(n))


def gic_of(
    loss: float,
    num_predictors: int,
    n: int,
    num_groups: int,
    loss_floor: float = DEFAULT_LOSS_FLOOR,
) -> float:
    """GIC = n log L + #{A} log J log(log n)."""
    log_log_n = _log_log(n)
    return n * math.log(max(loss, loss_floor)) + num_predictors * math.log(
        num_groups
    ) * log_log_n


def bic_of(
    loss: float, num_predictors: int, n: int, loss_floor: float = DEFAULT_LOSS_FLOOR
) -> float:
    """BIC = n log(||y - X beta||^2 / n) + #{A} log n, where ||y - X beta||^2 / n = 2L."""
    _log_log(n)
    return n * math.log(max(2 * loss, loss_floor)) + num_predictors * math.log(n)


def default_loss_floor(y_loss_at_zero: float) -> float:
    """1e-12 * (||y||^2/(2n) + 1)."""
    return DEFAULT_LOSS_FLOOR * (y_loss_at_zero + 1)


def default_tmax(n: int, p: int, p_min: int, num_groups: Optional[int] = None) -> int:
    """[n / (p_min log p)], clamped to [1, J]."""
    t_max = nearest_int(n / (p_min * math.log(p))) if p >= 2 else 1
    upper = num_groups if num_groups is not None else t_max
    return max(1, min(t_max, upper))


@dataclass(frozen=True)
class CriterionRecord:
    model_size: int
    support: Tuple[int, ...]
    num_predictors: int
    loss: float
    gic: float
    bic: float

    def value(self, criterion: Criterion) -> float:
        return self.gic if criterion == Criterion.GIC else self.bic
