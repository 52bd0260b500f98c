"""Replicated simulation study: generate, fit, score, one row per replicate."""
import time
from dataclasses import dataclass
from typing import List, Optional

import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from group_splicing.design import preprocess
from group_splicing.errors import BsgsError
from group_splicing.experiments.fitting import fit_with_method, problem_from_truth
from group_splicing.metrics import METRIC_FIELDS, evaluate, summarize
from group_splicing.modes import Method
from group_splicing.run_config import RunConfig
from group_splicing.synthgen import SyntheticSpec, generate

SUCCESS_SHARE = 0.9
REPLICATE_COLUMNS = [
    "replicate",
    "status",
    "error",
    "model_size",
    "support",
    *METRIC_FIELDS,
    "runtime_seconds",
]
SUMMARY_COLUMNS = ["tpr", "fpr", "mcc", "gse", "reee", "pe", "model_size", "runtime_seconds"]


@dataclass
class ReplicateOutcome:
    row: dict
    exit_code: int = 0

    @property
    def succeeded(self) -> bool:
        return self.exit_code == 0


def run_replicate(spec: SyntheticSpec, replicate: int, run_config: RunConfig) -> ReplicateOutcome:
    row = {column: None for column in REPLICATE_COLUMNS}
    row.update(replicate=replicate, status="ok", error="")
    try:
        truth = generate(spec, replicate)
        problem = problem_from_truth(truth)
        design = preprocess(truth.design_raw, truth.response, truth.structure)
        model_size = run_config.model_size
        if run_config.method == Method.GSPLICING and model_size is None:
            model_size = spec.s_star

        started = time.perf_counter()
        fit = fit_with_method(design, run_config, model_size=model_size)
        runtime = time.perf_counter() - started

        record = evaluate(
            fit,
            truth.true_support,
            design.num_groups,
            truth.beta_star,
            X_holdout=truth.X_test,
            y_holdout=truth.y_test,
        )
    except BsgsError as e:
        logger.warning(f"Replicate {replicate} failed: {type(e).__name__}: {e}")
        row.update(status="error", error=f"{type(e).__name__}: {e}")
        return ReplicateOutcome(row=row, exit_code=e.exit_code)

    row.update(record.to_dict())
    row.update(
        model_size=fit.model_size,
        support=";".join(problem.labels_of(fit.support)),
        runtime_seconds=runtime,
    )
    logger.info(
        f"Replicate {replicate}: T={fit.model_size} tpr={record.tpr} fpr={record.fpr} "
        f"mcc={record.mcc:.3f} in {runtime:.3f}s"
    )
    return ReplicateOutcome(row=row)


def run_replicates(
    spec: SyntheticSpec, run_config: RunConfig, replications: Optional[int] = None
) -> List[ReplicateOutcome]:
    """Results come back in replicate order regardless of completion order."""
    if replications is None:
        replications = run_config.replications
    return Parallel(n_jobs=run_config.threads, prefer="threads")(
        delayed(run_replicate)(spec, replicate, run_config)
        for replicate in range(replications)
    )


def replicates_frame(outcomes: List[ReplicateOutcome]) -> pd.DataFrame:
    return pd.DataFrame([outcome.row for outcome in outcomes], columns=REPLICATE_COLUMNS)


def summarize_replicates(frame: pd.DataFrame) -> dict:
    succeeded = frame[frame["status"] == "ok"]
    return {
        "replications": int(len(frame)),
        "succeeded": int(len(succeeded)),
        "metrics": summarize(succeeded, SUMMARY_COLUMNS),
    }


def exit_code_for(outcomes: List[ReplicateOutcome]) -> int:
    """0 when at least 90% of replicates succeeded, else the first failure's code."""
    succeeded = sum(outcome.succeeded for outcome in outcomes)
    if succeeded >= SUCCESS_SHARE * len(outcomes):
        return 0
    return next(outcome.exit_code for outcome in outcomes if not outcome.succeeded)
