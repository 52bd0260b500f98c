"""Fixed-size group splicing.

Starting from an initial active set of T groups, each iteration ranks the
active groups by backward sacrifice ||beta_G||^2 and the inactive groups by
forward sacrifice ||d_G||^2, then tries exchanging the C least useful active
groups for the C most promising inactive ones, C = c_max down to 1. The first
exchange whose refit lowers the loss by more than pi_T is accepted. The run
stops when no exchange qualifies."""
import math
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from group_splicing.design import GroupedDesign
from group_splicing.errors import DomainError, IterationCapError, SizeError
from group_splicing.linalg_core import (
    dual_on_inactive,
    fit_least_squares,
    group_sq_norms,
)
from group_splicing.selector.criteria import DEFAULT_LOSS_FLOOR
from group_splicing.splicing.state import (
    FitReport,
    GSplicingConfig,
    SpliceState,
    make_fit_report,
)


def default_threshold(model_size: int, p: int, p_max: int, n: int) -> float:
    """pi_T = 0.1 T p_max log(p) log(log n) / n."""
    if n <= math.e:
        raise DomainError(f"log(log n) is undefined or nonpositive for n={n}")
    return 0.1 * model_size * p_max * math.log(p) * math.log(math.log(n)) / n


def threshold_for(design: GroupedDesign, config: GSplicingConfig) -> float:
    if config.pi_T is not None:
        return config.pi_T
    return default_threshold(
        model_size=config.model_size,
        p=design.p,
        p_max=design.structure.p_max,
        n=design.n,
    )


def rank_groups(scores: np.ndarray, candidates: Iterable[int], largest: bool) -> List[int]:
    """Candidates ordered by score (descending if `largest`), ties by lowest id."""
    if largest:
        return sorted(candidates, key=lambda j: (-scores[j], j))
    return sorted(candidates, key=lambda j: (scores[j], j))


def initial_active_set(design: GroupedDesign, model_size: int) -> FrozenSet[int]:
    """The T groups with the largest ||X_G^T y||^2."""
    scores = group_sq_norms(design.structure, design.X.T @ design.y)
    ranked = rank_groups(scores, range(design.num_groups), largest=True)
    return frozenset(ranked[:model_size])


def make_state(
    design: GroupedDesign, active: Iterable[int], iteration: int = 0
) -> SpliceState:
    active = frozenset(active)
    fit = fit_least_squares(design, active)
    return SpliceState(
        active=active,
        inactive=frozenset(range(design.num_groups)) - active,
        fit=fit,
        dual=dual_on_inactive(design, fit),
        iteration=iteration,
    )


def exchange_candidates(
    design: GroupedDesign, state: SpliceState, exchange_size: int
) -> Tuple[List[int], List[int]]:
    """S1: the C active groups with the smallest ||beta_G||^2.
    S2: the C inactive groups with the largest ||d_G||^2."""
    if not 1 <= exchange_size <= min(len(state.active), len(state.inactive)):
        raise SizeError(
            f"Exchange size C={exchange_size} must lie in "
            f"[1, min(|A|={len(state.active)}, |I|={len(state.inactive)})]"
        )
    backward = group_sq_norms(design.structure, state.beta)
    forward = group_sq_norms(design.structure, state.dual)
    drop = rank_groups(backward, state.active, largest=False)[:exchange_size]
    add = rank_groups(forward, state.inactive, largest=True)[:exchange_size]
    return drop, add


def splice_once(
    design: GroupedDesign,
    state: SpliceState,
    config: GSplicingConfig,
    pi_T: Optional[float] = None,
) -> Tuple[SpliceState, bool, Optional[int]]:
    """One splicing iteration. Returns (next state, accepted, accepted C)."""
    if pi_T is None:
        pi_T = threshold_for(design, config)
    largest_exchange = min(config.c_max, len(state.active), len(state.inactive))
    if largest_exchange < 1:
        return state, False, None

    # Shrinking C drops the largest-||beta|| member of S1 and the
    # smallest-||d|| member of S2, so the size-C sets are prefixes.
    drop, add = exchange_candidates(design, state, largest_exchange)
    for exchange_size in range(largest_exchange, 0, -1):
        candidate = (state.active - set(drop[:exchange_size])) | set(
            add[:exchange_size]
        )
        candidate_state = make_state(design, candidate, iteration=state.iteration + 1)
        decrease = state.loss - candidate_state.loss
        logger.debug(
            f"T={len(state.active)} k={state.iteration} C={exchange_size}: "
            f"loss {state.loss:.6g} -> {candidate_state.loss:.6g} "
            f"(decrease {decrease:.3g}, threshold {pi_T:.3g})"
        )
        if decrease > pi_T:
            return candidate_state, True, exchange_size
    return state, False, None


def gsplicing_fit(
    design: GroupedDesign,
    config: GSplicingConfig,
    loss_floor: float = DEFAULT_LOSS_FLOOR,
) -> FitReport:
    """Splice until no exchange is accepted. The report's loss trace decreases by
    more than pi_T at every accepted step."""
    config.validate(design.num_groups)
    pi_T = threshold_for(design, config)
    initial = config.initial_active
    if initial is None:
        initial = initial_active_set(design, config.model_size)

    state = make_state(design, initial)
    trace = [state]
    exchange_sizes = []
    for _ in range(config.max_iterations):
        state, accepted, exchange_size = splice_once(design, state, config, pi_T)
        if not accepted:
            break
        trace.append(state)
        exchange_sizes.append(exchange_size)
    else:
        _, still_accepting, _ = splice_once(design, state, config, pi_T)
        if still_accepting:
            raise IterationCapError(
                f"GSplicing at T={config.model_size} still improving after "
                f"{config.max_iterations} iterations"
            )

    logger.debug(
        f"GSplicing T={config.model_size} converged after {len(trace) - 1} "
        f"splices, loss {state.loss:.6g}, support {sorted(state.active)}"
    )
    return make_fit_report(
        design, trace, exchange_sizes=exchange_sizes, pi_T=pi_T, loss_floor=loss_floor
    )
