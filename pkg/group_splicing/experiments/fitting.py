"""Turning a RunConfig into a problem and a fit."""
from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np
from loguru import logger

from group_splicing.design import (
    GroupedDesign,
    GroupStructure,
    default_column_names,
    default_group_labels,
    ingest_csv,
    preprocess,
)
from group_splicing.errors import InvalidConfigError
from group_splicing.modes import Method
from group_splicing.run_config import RunConfig
from group_splicing.selector.criteria import default_loss_floor
from group_splicing.selector.golden import ggsplicing_fit
from group_splicing.selector.sequential import sgsplicing_fit
from group_splicing.splicing import GSplicingConfig, gsplicing_fit
from group_splicing.splicing.state import FitReport
from group_splicing.synthgen import GroundTruth, SyntheticSpec, generate


@dataclass(eq=False)
class Problem:
    X_raw: np.ndarray
    y_raw: np.ndarray
    structure: GroupStructure
    column_names: List[str]
    group_labels: List[str]
    truth: Optional[GroundTruth] = None

    def design(self) -> GroupedDesign:
        return preprocess(self.X_raw, self.y_raw, self.structure)

    def labels_of(self, support) -> List[str]:
        return [self.group_labels[j] for j in sorted(support)]


def synthetic_spec_of(run_config: RunConfig, synthetic_spec: Optional[dict]) -> SyntheticSpec:
    """The spec document with the run's seed applied, if one was given."""
    if synthetic_spec is None:
        raise InvalidConfigError(f"{run_config.command.value} requires --spec")
    spec = SyntheticSpec.from_dict(synthetic_spec)
    if run_config.seed is not None:
        spec = replace(spec, seed=run_config.seed)
        spec.validate()
    return spec


def problem_from_truth(truth: GroundTruth) -> Problem:
    return Problem(
        X_raw=truth.design_raw,
        y_raw=truth.response,
        structure=truth.structure,
        column_names=default_column_names(truth.structure.p),
        group_labels=default_group_labels(truth.structure.num_groups),
        truth=truth,
    )


def load_problem(run_config: RunConfig, synthetic_spec: Optional[dict]) -> Problem:
    """Controller. A CSV dataset wins over a synthetic spec."""
    if run_config.design_path is not None or run_config.group_map_path is not None:
        if run_config.design_path is None or run_config.group_map_path is None:
            raise InvalidConfigError("--design and --groups must be given together")
        ingested = ingest_csv(
            run_config.design_path, run_config.response_column, run_config.group_map_path
        )
        return Problem(
            X_raw=ingested.X_raw,
            y_raw=ingested.y_raw,
            structure=ingested.structure,
            column_names=ingested.column_names,
            group_labels=ingested.group_labels,
        )
    if synthetic_spec is None:
        raise InvalidConfigError(
            f"{run_config.command.value} needs a dataset (--design, --groups) or --spec"
        )
    spec = synthetic_spec_of(run_config, synthetic_spec)
    logger.info(f"Generating synthetic problem from seed {spec.seed}")
    return problem_from_truth(generate(spec))


def fit_with_method(
    design: GroupedDesign, run_config: RunConfig, model_size: Optional[int] = None
) -> FitReport:
    """Fit by the configured method. Fixed-size splicing needs a model size."""
    method = run_config.method
    if method == Method.GSPLICING:
        if model_size is None:
            model_size = run_config.model_size
        if model_size is None:
            raise InvalidConfigError("--method gsplicing requires --size")
        config = GSplicingConfig(
            model_size=model_size,
            c_max=run_config.c_max,
            pi_T=run_config.pi_T,
            max_iterations=run_config.max_iterations,
        )
        y_loss_at_zero = float(design.y @ design.y) / (2 * design.n)
        return gsplicing_fit(design, config, loss_floor=default_loss_floor(y_loss_at_zero))
    if method == Method.SGS:
        best, _ = sgsplicing_fit(design, run_config.selector_config())
        return best
    return ggsplicing_fit(design, run_config.selector_config())
