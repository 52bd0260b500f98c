import argparse
import asyncio
import sys
from pathlib import Path
from typing import List, Optional

from filelock import FileLock, Timeout
from loguru import logger

from group_splicing import custom_logging, paths, solver_config_mod
from group_splicing.commands import COMMANDS
from group_splicing.custom_logging import log_startup_context, setup_logger
from group_splicing.errors import BsgsError, ConfigError, InvalidConfigError
from group_splicing.modes import Command, Criterion, Method, OutputFormat
from group_splicing.run_context import make_run_context
from group_splicing.version import RELEASE
from group_splicing.workspace import make_output_folder_structure, save_effective_config

__version__ = RELEASE

OUTPUT_FILES_HELP = f"""\
outputs (columns and keys are documented in FORMATS.md):
  fit        {paths.FIT_REPORT_FILENAME}, {paths.COEFFICIENTS_FILENAME} (csv format)
  simulate   {paths.REPLICATES_FILENAME}, {paths.SUMMARY_FILENAME}
  bench      {paths.SCALING_FILENAME}, {paths.SCALING_RUNS_FILENAME}
  gic-path   {paths.GIC_PATH_FILENAME}: T, loss, gic, bic, support, selected
  oracle     {paths.ORACLE_FILENAME}
  stability  {paths.STABILITY_FILENAME}: group, frequency, selected_count;
             {paths.STABILITY_SUMMARY_FILENAME}
every run also writes {paths.RUN_CONFIG_FILENAME} and {paths.LOGS_FOLDER}/.

exit codes: 0 success, 2 input error, 3 numerical error, 4 config error
"""


class ConfigArgumentParser(argparse.ArgumentParser):
    """Usage errors are config errors (exit 4)."""

    def error(self, message):
        raise InvalidConfigError(f"{self.prog}: {message}")


def _add_dataset_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--design", help="CSV of predictors and response")
    parser.add_argument("--response", default="y", help="response column name")
    parser.add_argument("--groups", help="CSV mapping column_name to group_label")
    parser.add_argument("--spec", help="synthetic spec JSON, used when no --design")


def _add_solver_arguments(parser: argparse.ArgumentParser, with_method: bool = True):
    if with_method:
        parser.add_argument("--method", choices=[m.value for m in Method])
    parser.add_argument("--size", type=int, help="model size T for gsplicing/oracle")
    parser.add_argument("--t-min", dest="t_min", type=int)
    parser.add_argument("--t-max", dest="t_max", type=int)
    parser.add_argument("--c-max", dest="c_max", type=int)
    parser.add_argument("--criterion", choices=[c.value for c in Criterion])
    parser.add_argument("--pi-t", dest="pi_T", type=float, help="splice acceptance threshold")
    parser.add_argument("--max-iterations", dest="max_iterations", type=int)
    parser.add_argument(
        "--no-refine-terminal",
        dest="refine_terminal",
        action="store_const",
        const=False,
        default=None,
        help="stop golden-section search at the literal terminal size",
    )


def _add_replication_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--replications", type=int)
    parser.add_argument("--threads", type=int, help="-1 uses every core")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", dest="out_dir", default="out")
    common.add_argument("--config", help="solver config YAML")
    common.add_argument("--seed", type=int)
    common.add_argument(
        "--format", dest="output_format", choices=[f.value for f in OutputFormat]
    )

    parser = ConfigArgumentParser(
        prog="group_splicing",
        description="Best subset of groups selection by group splicing.",
        epilog=OUTPUT_FILES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--write-default-config",
        dest="write_default_config",
        metavar="PATH",
        help=f"write a commented {solver_config_mod.FILENAME} template and exit",
    )
    subparsers = parser.add_subparsers(dest="command", parser_class=ConfigArgumentParser)

    fit = subparsers.add_parser(Command.FIT.value, parents=[common], help="fit one dataset")
    _add_dataset_arguments(fit)
    _add_solver_arguments(fit)
    fit.add_argument("--holdout", help="CSV with the training columns, for prediction error")

    simulate = subparsers.add_parser(
        Command.SIMULATE.value, parents=[common], help="replicated synthetic study"
    )
    simulate.add_argument("--spec", required=True)
    _add_solver_arguments(simulate)
    _add_replication_arguments(simulate)

    bench = subparsers.add_parser(
        Command.BENCH.value, parents=[common], help="runtime scaling sweep"
    )
    bench.add_argument("--spec", required=True)
    bench.add_argument(
        "--vary", action="append", required=True, help="COMPONENT=START:STOP:STEP, J/n/K"
    )
    _add_solver_arguments(bench)
    _add_replication_arguments(bench)

    gic_path = subparsers.add_parser(
        Command.GIC_PATH.value, parents=[common], help="criterion path over model sizes"
    )
    _add_dataset_arguments(gic_path)
    _add_solver_arguments(gic_path, with_method=False)

    oracle = subparsers.add_parser(
        Command.ORACLE.value, parents=[common], help="exhaustive search, small J only"
    )
    _add_dataset_arguments(oracle)
    _add_solver_arguments(oracle, with_method=False)

    stability = subparsers.add_parser(
        Command.STABILITY.value, parents=[common], help="subsample selection frequencies"
    )
    _add_dataset_arguments(stability)
    _add_solver_arguments(stability)
    _add_replication_arguments(stability)
    stability.add_argument("--subsample-fraction", dest="subsample_fraction", type=float)
    stability.add_argument("--top-k", dest="top_k", type=int)
    return parser


def run_as_file(argv: Optional[List[str]] = None):
    sys.exit(run_cli(argv))


def run_cli(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigError as e:
        print(e, file=sys.stderr)
        return e.exit_code

    if args.write_default_config:
        solver_config_mod.write_default_config(Path(args.write_default_config))
        return 0
    if args.command is None:
        parser.print_help()
        return InvalidConfigError.exit_code

    exit_code = run_main_asyncio(args)
    if custom_logging.has_encountered_error:
        print(f"Errors were logged; see {Path(args.out_dir) / paths.LOGS_FOLDER}")
    return exit_code


@logger.catch(reraise=True)
def run_main_asyncio(args: argparse.Namespace) -> int:
    return asyncio.run(main(args))


async def main(args: argparse.Namespace) -> int:
    """Run one command with its outputs in args.out_dir."""
    out_dir = Path(args.out_dir).absolute()
    make_output_folder_structure(out_dir)
    setup_logger(out_dir=out_dir)
    log_startup_context(version=__version__, out_dir=out_dir, command=Command(args.command))

    lock = FileLock(str(out_dir / paths.LOCKFILE_PATH))
    try:
        with lock.acquire(timeout=2):
            exit_code = await run_command(args)
    except Timeout:
        logger.warning(
            f"Another run holds {out_dir / paths.LOCKFILE_PATH}. "
            f"Use a different --out-dir or delete the lock if no run is active."
        )
        return ConfigError.exit_code
    except BsgsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    logger.info(f"Complete with exit code {exit_code}")
    return exit_code


async def run_command(args: argparse.Namespace) -> int:
    run_context = await make_run_context(args)
    save_effective_config(run_context.run_config)
    return COMMANDS[run_context.run_config.command](run_context)


if __name__ == "__main__":
    run_as_file()
