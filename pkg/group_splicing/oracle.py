"""Exhaustive best-subset-of-groups search for small problems."""
import itertools
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from loguru import logger

from group_splicing.design import GroupedDesign
from group_splicing.errors import InvalidConfigError, TooLargeError
from group_splicing.linalg_core import fit_least_squares

ENUMERATION_LIMIT = 10 ** 6


@dataclass(eq=False)
class OracleResult:
    best_support: Tuple[int, ...]
    best_loss: float
    num_candidates: int
    beta: np.ndarray


def exhaustive_bsgs(
    design: GroupedDesign, model_size: int, limit: int = ENUMERATION_LIMIT
) -> OracleResult:
    """Refit every size-T group subset in lexicographic order and keep the first
    one with the smallest loss."""
    num_groups = design.num_groups
    if not 0 <= model_size <= num_groups:
        raise InvalidConfigError(
            f"Model size T={model_size} must lie in [0, J={num_groups}]"
        )
    num_candidates = math.comb(num_groups, model_size)
    if num_candidates > limit:
        raise TooLargeError(
            f"Exhaustive search over C({num_groups}, {model_size}) = {num_candidates} "
            f"supports exceeds the limit of {limit}"
        )

    best = None
    for support in itertools.combinations(range(num_groups), model_size):
        fit = fit_least_squares(design, support)
        if best is None or fit.loss < best[1].loss:
            best = (support, fit)
    support, fit = best
    logger.debug(
        f"Oracle T={model_size}: {num_candidates} supports, best {list(support)} "
        f"loss {fit.loss:.6g}"
    )
    return OracleResult(
        best_support=tuple(support),
        best_loss=fit.loss,
        num_candidates=num_candidates,
        beta=fit.beta,
    )
