from pathlib import Path
from typing import Optional

import group_splicing.info_files as info_files
from group_splicing.errors import InvalidConfigError
from group_splicing.file_handling import create_file
from group_splicing.modes import Criterion, Method, OutputFormat
from group_splicing.splicing.state import C_MAX_DEFAULT, MAX_ITERATIONS_DEFAULT

FILENAME = "solver_config.yaml"


async def read_solver_config(path: Optional[Path]) -> dict:
    """Controller"""
    if path is None:
        return {}
    return info_files.read(path, missing_ok=False)


def write_default_config(path: Path):
    create_file(path=path, content=DEFAULT_CONFIG)


def get_initial_default_config() -> dict:
    return info_files.YAML_HANDLER.load(DEFAULT_CONFIG)


def _get_enum(config: dict, field: str, default, enum_type):
    value = config.get(field, default)
    try:
        return enum_type(value.value if isinstance(value, enum_type) else value)
    except ValueError:
        raise InvalidConfigError(
            f"{field} must be one of {[member.value for member in enum_type]}, "
            f"got {value!r}"
        )


METHOD_FIELD = "method"
METHOD_DEFAULT = Method.SGS


def get_method(config: dict) -> Method:
    return _get_enum(config, METHOD_FIELD, METHOD_DEFAULT, Method)


C_MAX_FIELD = "c_max"


def get_c_max(config: dict) -> int:
    return int(config.get(C_MAX_FIELD, C_MAX_DEFAULT))


MAX_ITERATIONS_FIELD = "max_iterations"


def get_max_iterations(config: dict) -> int:
    return int(config.get(MAX_ITERATIONS_FIELD, MAX_ITERATIONS_DEFAULT))


T_MIN_FIELD = "t_min"
T_MIN_DEFAULT = 1


def get_t_min(config: dict) -> int:
    return int(config.get(T_MIN_FIELD, T_MIN_DEFAULT))


T_MAX_FIELD = "t_max"


def get_t_max(config: dict) -> Optional[int]:
    value = config.get(T_MAX_FIELD)
    return None if value is None else int(value)


CRITERION_FIELD = "criterion"
CRITERION_DEFAULT = Criterion.GIC


def get_criterion(config: dict) -> Criterion:
    return _get_enum(config, CRITERION_FIELD, CRITERION_DEFAULT, Criterion)


PI_T_FIELD = "pi_T"


def get_pi_T(config: dict) -> Optional[float]:
    value = config.get(PI_T_FIELD)
    return None if value is None else float(value)


SEED_FIELD = "seed"


def get_seed(config: dict) -> Optional[int]:
    value = config.get(SEED_FIELD)
    return None if value is None else int(value)


REPLICATIONS_FIELD = "replications"
REPLICATIONS_DEFAULT = 100


def get_replications(config: dict) -> int:
    return int(config.get(REPLICATIONS_FIELD, REPLICATIONS_DEFAULT))


SUBSAMPLE_FRACTION_FIELD = "subsample_fraction"
SUBSAMPLE_FRACTION_DEFAULT = 0.5


def get_subsample_fraction(config: dict) -> float:
    return float(config.get(SUBSAMPLE_FRACTION_FIELD, SUBSAMPLE_FRACTION_DEFAULT))


THREADS_FIELD = "threads"
THREADS_DEFAULT = 1


def get_threads(config: dict) -> int:
    return int(config.get(THREADS_FIELD, THREADS_DEFAULT))


OUTPUT_FORMAT_FIELD = "output_format"
OUTPUT_FORMAT_DEFAULT = OutputFormat.CSV


def get_output_format(config: dict) -> OutputFormat:
    return _get_enum(config, OUTPUT_FORMAT_FIELD, OUTPUT_FORMAT_DEFAULT, OutputFormat)


TOP_K_FIELD = "top_k"
TOP_K_DEFAULT = 10


def get_top_k(config: dict) -> int:
    return int(config.get(TOP_K_FIELD, TOP_K_DEFAULT))


REFINE_TERMINAL_FIELD = "refine_terminal"
REFINE_TERMINAL_DEFAULT = True


def get_refine_terminal(config: dict) -> bool:
    return bool(config.get(REFINE_TERMINAL_FIELD, REFINE_TERMINAL_DEFAULT))


DEFAULT_CONFIG = f"""\
# Format is <key name>: <value> (with a space after the : )
# Any option given on the command line overrides the value here.


{METHOD_FIELD}: {METHOD_DEFAULT.value}
    # How the model size is chosen.
    # {Method.GSPLICING.value} = fixed size, requires --size
    # {Method.SGS.value} = sweep every size from t_min to t_max
    # {Method.GGS.value} = golden-section search between t_min and t_max
{CRITERION_FIELD}: {CRITERION_DEFAULT.value}
    # Information criterion minimized over model sizes: {Criterion.GIC.value} or {Criterion.BIC.value}.
{T_MIN_FIELD}: {T_MIN_DEFAULT}
{T_MAX_FIELD}:
    # Leave empty for [n / (p_min log p)], clamped to the number of groups.
{REFINE_TERMINAL_FIELD}: {REFINE_TERMINAL_DEFAULT}
    # After the golden-section search stops, step to neighbouring sizes in the
    # final bracket while the criterion keeps improving.


{C_MAX_FIELD}: {C_MAX_DEFAULT}
    # Largest number of groups exchanged in one splice.
{MAX_ITERATIONS_FIELD}: {MAX_ITERATIONS_DEFAULT}
{PI_T_FIELD}:
    # Minimum loss decrease for accepting a splice.
    # Leave empty for 0.1 T p_max log(p) log(log n) / n.


{SEED_FIELD}:
    # Leave empty to use the seed of the synthetic spec (0 for real data).
{REPLICATIONS_FIELD}: {REPLICATIONS_DEFAULT}
{SUBSAMPLE_FRACTION_FIELD}: {SUBSAMPLE_FRACTION_DEFAULT}
    # Share of rows drawn in each stability-selection replicate.
{THREADS_FIELD}: {THREADS_DEFAULT}
    # Worker threads for replicates. -1 uses every core.
{TOP_K_FIELD}: {TOP_K_DEFAULT}
    # Number of groups listed in the stability summary.
{OUTPUT_FORMAT_FIELD}: {OUTPUT_FORMAT_DEFAULT.value}
    # {OutputFormat.CSV.value} also writes coefficients.csv next to fit_report.json.
"""
