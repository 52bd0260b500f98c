"""Stability selection: refit on random row subsamples and count how often each
group is selected. Rows left out of a subsample score its prediction error."""
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from group_splicing.design import preprocess
from group_splicing.errors import BsgsError, InvalidConfigError
from group_splicing.experiments.fitting import Problem, fit_with_method
from group_splicing.metrics import prediction_error, summarize
from group_splicing.run_config import RunConfig
from group_splicing.synthgen import stream

STABILITY_COLUMNS = ["group", "frequency", "selected_count"]
DEFAULT_SEED = 0


@dataclass
class SubsampleOutcome:
    replicate: int
    support: Optional[Tuple[int, ...]] = None
    pe: Optional[float] = None
    error: str = ""
    exit_code: int = 0


def subsample_rows(
    n: int, fraction: float, seed: int, replicate: int
) -> Tuple[np.ndarray, np.ndarray]:
    """(kept, left out) row indices, each sorted. floor(fraction * n) rows are kept."""
    size = math.floor(fraction * n)
    if not 0 < size < n:
        raise InvalidConfigError(
            f"subsample_fraction={fraction} keeps {size} of n={n} rows"
        )
    rng = stream(seed, "subsample", replicate)
    kept = np.sort(rng.choice(n, size=size, replace=False))
    left_out = np.setdiff1d(np.arange(n), kept, assume_unique=True)
    return kept, left_out


def fit_subsample(
    problem: Problem, run_config: RunConfig, seed: int, replicate: int
) -> SubsampleOutcome:
    kept, left_out = subsample_rows(
        len(problem.y_raw), run_config.subsample_fraction, seed, replicate
    )
    try:
        design = preprocess(problem.X_raw[kept], problem.y_raw[kept], problem.structure)
        fit = fit_with_method(design, run_config)
        pe = prediction_error(fit, problem.X_raw[left_out], problem.y_raw[left_out])
    except BsgsError as e:
        logger.warning(f"Stability replicate {replicate} failed: {type(e).__name__}: {e}")
        return SubsampleOutcome(
            replicate=replicate,
            error=f"{type(e).__name__}: {e}",
            exit_code=e.exit_code,
        )
    logger.info(
        f"Stability replicate {replicate}: selected {problem.labels_of(fit.support)}"
    )
    return SubsampleOutcome(replicate=replicate, support=fit.support, pe=pe)


def run_stability_selection(
    problem: Problem, run_config: RunConfig
) -> List[SubsampleOutcome]:
    """Controller"""
    seed = DEFAULT_SEED if run_config.seed is None else run_config.seed
    return Parallel(n_jobs=run_config.threads, prefer="threads")(
        delayed(fit_subsample)(problem, run_config, seed, replicate)
        for replicate in range(run_config.replications)
    )


def selection_frequencies(
    problem: Problem, outcomes: List[SubsampleOutcome]
) -> pd.DataFrame:
    """Per-group share of successful subsample fits selecting it, highest first,
    ties in group order."""
    succeeded = [outcome for outcome in outcomes if outcome.exit_code == 0]
    counts = np.zeros(problem.structure.num_groups, dtype=int)
    for outcome in succeeded:
        counts[list(outcome.support)] += 1
    denominator = max(len(succeeded), 1)
    order = sorted(range(len(counts)), key=lambda j: (-counts[j], j))
    return pd.DataFrame(
        {
            "group": [problem.group_labels[j] for j in order],
            "frequency": [counts[j] / denominator for j in order],
            "selected_count": [int(counts[j]) for j in order],
        },
        columns=STABILITY_COLUMNS,
    )


def stability_summary(
    frequencies: pd.DataFrame, outcomes: List[SubsampleOutcome], top_k: int
) -> dict:
    succeeded = [outcome for outcome in outcomes if outcome.exit_code == 0]
    per_replicate = pd.DataFrame(
        {
            "num_groups_selected": [len(outcome.support) for outcome in succeeded],
            "pe": [outcome.pe for outcome in succeeded],
        },
        columns=["num_groups_selected", "pe"],
    )
    return {
        "replications": len(outcomes),
        "succeeded": len(succeeded),
        "failures": [
            {"replicate": outcome.replicate, "error": outcome.error}
            for outcome in outcomes
            if outcome.exit_code != 0
        ],
        "top_groups": frequencies.head(top_k).to_dict(orient="records"),
        **summarize(per_replicate, ["num_groups_selected", "pe"]),
    }
