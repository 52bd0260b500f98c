from pathlib import Path

LOGS_FOLDER = Path("logs")
LOCKFILE_PATH = Path(".lock")
RUN_CONFIG_FILENAME = "run_config.yaml"

FIT_REPORT_FILENAME = "fit_report.json"
COEFFICIENTS_FILENAME = "coefficients.csv"
REPLICATES_FILENAME = "replicates.csv"
SUMMARY_FILENAME = "summary.json"
SCALING_FILENAME = "scaling.csv"
SCALING_RUNS_FILENAME = "scaling_runs.csv"
GIC_PATH_FILENAME = "gic_path.csv"
ORACLE_FILENAME = "oracle.json"
STABILITY_FILENAME = "stability.csv"
STABILITY_SUMMARY_FILENAME = "stability_summary.json"
