"""One controller per CLI command. Each writes its outputs under the run's out_dir
and returns the process exit code."""
from typing import Optional

import pandas as pd
from loguru import logger

from group_splicing import paths
from group_splicing.design import read_design_columns
from group_splicing.errors import InvalidConfigError
from group_splicing.experiments.fitting import (
    Problem,
    fit_with_method,
    load_problem,
    synthetic_spec_of,
)
from group_splicing.experiments.scaling import parse_sweep, run_scaling_study
from group_splicing.experiments.simulate import (
    SUCCESS_SHARE,
    exit_code_for,
    replicates_frame,
    run_replicates,
    summarize_replicates,
)
from group_splicing.experiments.stability import (
    run_stability_selection,
    selection_frequencies,
    stability_summary,
)
from group_splicing.file_handling import save_json
from group_splicing.metrics import prediction_error
from group_splicing.modes import Command, OutputFormat
from group_splicing.oracle import exhaustive_bsgs
from group_splicing.run_config import RunConfig
from group_splicing.run_context import RunContext
from group_splicing.selector.path_export import write_path_csv
from group_splicing.selector.sequential import sgsplicing_fit
from group_splicing.splicing import GSplicingConfig, gsplicing_fit
from group_splicing.splicing.state import FitReport
from group_splicing.version import describe_version

CSV_FLOAT_FORMAT = "%.12g"
COEFFICIENT_COLUMNS = ["column", "group", "coefficient"]


def _write_csv(frame: pd.DataFrame, path):
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def coefficients_frame(fit: FitReport, problem: Problem) -> pd.DataFrame:
    owner = problem.structure.group_of_column
    return pd.DataFrame(
        {
            "column": problem.column_names,
            "group": [problem.group_labels[owner[i]] for i in range(problem.structure.p)],
            "coefficient": fit.beta_original,
        },
        columns=COEFFICIENT_COLUMNS,
    )


def fit_report_document(
    fit: FitReport, problem: Problem, run_config: RunConfig, pe: Optional[float] = None
) -> dict:
    coefficients = coefficients_frame(fit, problem)
    return {
        "version": describe_version(),
        "method": fit.method.value,
        "criterion": run_config.criterion.value,
        "model_size": fit.model_size,
        "support": problem.labels_of(fit.support),
        "num_predictors": fit.num_predictors,
        "intercept": fit.intercept,
        "loss": fit.loss,
        "gic": fit.gic,
        "bic": fit.bic,
        "pi_T": fit.pi_T,
        "iterations": fit.iterations,
        "loss_trace": list(fit.loss_trace),
        "exchange_sizes": list(fit.exchange_sizes),
        "coefficients": coefficients.to_dict(orient="records"),
        "path": [
            {
                "T": record.model_size,
                "loss": record.loss,
                "gic": record.gic,
                "bic": record.bic,
                "support": problem.labels_of(record.support),
            }
            for record in fit.path
        ],
        "pe": pe,
    }


def run_fit(run_context: RunContext) -> int:
    """Controller"""
    run_config = run_context.run_config
    problem = load_problem(run_config, run_context.synthetic_spec)
    fit = fit_with_method(problem.design(), run_config)

    pe = None
    if run_config.holdout_path is not None:
        X_holdout, y_holdout = read_design_columns(
            run_config.holdout_path, problem.column_names, run_config.response_column
        )
        pe = prediction_error(fit, X_holdout, y_holdout)

    save_json(
        run_context.out_dir / paths.FIT_REPORT_FILENAME,
        fit_report_document(fit, problem, run_config, pe),
    )
    if run_config.output_format == OutputFormat.CSV:
        _write_csv(
            coefficients_frame(fit, problem),
            run_context.out_dir / paths.COEFFICIENTS_FILENAME,
        )
    logger.info(
        f"Selected {fit.model_size} groups: {problem.labels_of(fit.support)}"
    )
    return 0


def emit_gic_path(run_context: RunContext) -> int:
    """Controller. Always sweeps sequentially so every size gets a row."""
    run_config = run_context.run_config
    problem = load_problem(run_config, run_context.synthetic_spec)
    best, path = sgsplicing_fit(problem.design(), run_config.selector_config())
    write_path_csv(
        run_context.out_dir / paths.GIC_PATH_FILENAME,
        path,
        selected_size=best.model_size,
        group_labels=problem.group_labels,
    )
    logger.info(f"Criterion path argmin at T={best.model_size}")
    return 0


def run_oracle(run_context: RunContext) -> int:
    """Controller"""
    run_config = run_context.run_config
    problem = load_problem(run_config, run_context.synthetic_spec)
    model_size = run_config.model_size
    if model_size is None and problem.truth is not None:
        model_size = len(problem.truth.true_support)
    if model_size is None:
        raise InvalidConfigError("oracle requires --size for CSV datasets")

    design = problem.design()
    result = exhaustive_bsgs(design, model_size)
    document = {
        "version": describe_version(),
        "model_size": model_size,
        "support": problem.labels_of(result.best_support),
        "loss": result.best_loss,
        "num_candidates": result.num_candidates,
        "splicing": None,
    }
    if model_size >= 1:
        splicing = gsplicing_fit(
            design,
            GSplicingConfig(
                model_size=model_size,
                c_max=run_config.c_max,
                pi_T=run_config.pi_T,
                max_iterations=run_config.max_iterations,
            ),
        )
        document["splicing"] = {
            "support": problem.labels_of(splicing.support),
            "loss": splicing.loss,
            "matches_oracle": splicing.support == result.best_support,
        }
    save_json(run_context.out_dir / paths.ORACLE_FILENAME, document)
    return 0


def run_simulate(run_context: RunContext) -> int:
    """Controller"""
    run_config = run_context.run_config
    spec = synthetic_spec_of(run_config, run_context.synthetic_spec)
    outcomes = run_replicates(spec, run_config)
    frame = replicates_frame(outcomes)
    _write_csv(frame, run_context.out_dir / paths.REPLICATES_FILENAME)
    save_json(
        run_context.out_dir / paths.SUMMARY_FILENAME,
        {
            "version": describe_version(),
            "spec": spec.to_dict(),
            "config": run_config.to_dict(),
            **summarize_replicates(frame),
        },
    )
    return exit_code_for(outcomes)


def run_bench(run_context: RunContext) -> int:
    """Controller"""
    run_config = run_context.run_config
    spec = synthetic_spec_of(run_config, run_context.synthetic_spec)
    sweeps = [parse_sweep(declaration) for declaration in run_config.vary]
    points, runs = run_scaling_study(spec, sweeps, run_config)
    _write_csv(points, run_context.out_dir / paths.SCALING_FILENAME)
    _write_csv(runs, run_context.out_dir / paths.SCALING_RUNS_FILENAME)
    return 0


def run_stability(run_context: RunContext) -> int:
    """Controller"""
    run_config = run_context.run_config
    problem = load_problem(run_config, run_context.synthetic_spec)
    outcomes = run_stability_selection(problem, run_config)
    frequencies = selection_frequencies(problem, outcomes)
    _write_csv(frequencies, run_context.out_dir / paths.STABILITY_FILENAME)
    save_json(
        run_context.out_dir / paths.STABILITY_SUMMARY_FILENAME,
        {
            "version": describe_version(),
            "config": run_config.to_dict(),
            **stability_summary(frequencies, outcomes, run_config.top_k),
        },
    )
    succeeded = sum(outcome.exit_code == 0 for outcome in outcomes)
    if succeeded >= SUCCESS_SHARE * len(outcomes):
        return 0
    return next(outcome.exit_code for outcome in outcomes if outcome.exit_code)


COMMANDS = {
    Command.FIT: run_fit,
    Command.SIMULATE: run_simulate,
    Command.BENCH: run_bench,
    Command.GIC_PATH: emit_gic_path,
    Command.ORACLE: run_oracle,
    Command.STABILITY: run_stability,
}
