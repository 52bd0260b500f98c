"""The resolved settings of one CLI run: command line over --config YAML over defaults."""
import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from group_splicing import solver_config_mod as cfg
from group_splicing.errors import InvalidConfigError
from group_splicing.modes import Command, Criterion, Method, OutputFormat
from group_splicing.selector.config import SelectorConfig


@dataclass
class RunConfig:
    command: Command
    out_dir: Path
    design_path: Optional[Path] = None
    response_column: str = "y"
    group_map_path: Optional[Path] = None
    spec_path: Optional[Path] = None
    holdout_path: Optional[Path] = None
    config_path: Optional[Path] = None
    method: Method = cfg.METHOD_DEFAULT
    model_size: Optional[int] = None
    t_min: int = cfg.T_MIN_DEFAULT
    t_max: Optional[int] = None
    c_max: int = cfg.C_MAX_DEFAULT
    criterion: Criterion = cfg.CRITERION_DEFAULT
    pi_T: Optional[float] = None
    max_iterations: int = cfg.MAX_ITERATIONS_DEFAULT
    refine_terminal: bool = cfg.REFINE_TERMINAL_DEFAULT
    seed: Optional[int] = None
    replications: int = cfg.REPLICATIONS_DEFAULT
    subsample_fraction: float = cfg.SUBSAMPLE_FRACTION_DEFAULT
    threads: int = cfg.THREADS_DEFAULT
    output_format: OutputFormat = cfg.OUTPUT_FORMAT_DEFAULT
    top_k: int = cfg.TOP_K_DEFAULT
    vary: List[str] = field(default_factory=list)

    def validate(self):
        if self.replications < 1:
            raise InvalidConfigError(
                f"replications must be at least 1, got {self.replications}"
            )
        if not 0 < self.subsample_fraction < 1:
            raise InvalidConfigError(
                f"subsample_fraction must lie strictly between 0 and 1, "
                f"got {self.subsample_fraction}"
            )
        if self.threads == 0:
            raise InvalidConfigError("threads must be nonzero")
        if self.top_k < 1:
            raise InvalidConfigError(f"top_k must be at least 1, got {self.top_k}")
        if self.model_size is not None and self.model_size < 0:
            raise InvalidConfigError(f"--size must be nonnegative, got {self.model_size}")

    def selector_config(self) -> SelectorConfig:
        return SelectorConfig(
            t_min=self.t_min,
            t_max=self.t_max,
            c_max=self.c_max,
            criterion=self.criterion,
            max_iterations=self.max_iterations,
            pi_T=self.pi_T,
            refine_terminal=self.refine_terminal,
        )

    def to_dict(self) -> dict:
        """Plain-typed form for run_config.yaml."""
        document = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if isinstance(value, (Command, Method, Criterion, OutputFormat)):
                value = value.value
            elif isinstance(value, Path):
                value = str(value)
            elif isinstance(value, list):
                value = list(value)
            document[name] = value
        return document


def _pick(cli_value, config: dict, getter):
    return cli_value if cli_value is not None else getter(config)


def resolve_run_config(args: argparse.Namespace, solver_config: dict) -> RunConfig:
    """Controller"""
    def get(name):
        return getattr(args, name, None)

    method = get("method")
    criterion = get("criterion")
    output_format = get("output_format")
    run_config = RunConfig(
        command=Command(args.command),
        out_dir=Path(args.out_dir).absolute(),
        design_path=_as_path(get("design")),
        response_column=get("response") or "y",
        group_map_path=_as_path(get("groups")),
        spec_path=_as_path(get("spec")),
        holdout_path=_as_path(get("holdout")),
        config_path=_as_path(get("config")),
        method=Method(method) if method else cfg.get_method(solver_config),
        model_size=get("size"),
        t_min=_pick(get("t_min"), solver_config, cfg.get_t_min),
        t_max=_pick(get("t_max"), solver_config, cfg.get_t_max),
        c_max=_pick(get("c_max"), solver_config, cfg.get_c_max),
        criterion=Criterion(criterion) if criterion else cfg.get_criterion(solver_config),
        pi_T=_pick(get("pi_T"), solver_config, cfg.get_pi_T),
        max_iterations=_pick(get("max_iterations"), solver_config, cfg.get_max_iterations),
        refine_terminal=_pick(get("refine_terminal"), solver_config, cfg.get_refine_terminal),
        seed=_pick(get("seed"), solver_config, cfg.get_seed),
        replications=_pick(get("replications"), solver_config, cfg.get_replications),
        subsample_fraction=_pick(
            get("subsample_fraction"), solver_config, cfg.get_subsample_fraction
        ),
        threads=_pick(get("threads"), solver_config, cfg.get_threads),
        output_format=(
            OutputFormat(output_format)
            if output_format
            else cfg.get_output_format(solver_config)
        ),
        top_k=_pick(get("top_k"), solver_config, cfg.get_top_k),
        vary=list(get("vary") or []),
    )
    run_config.validate()
    return run_config


def _as_path(value) -> Optional[Path]:
    return None if value is None else Path(value)
