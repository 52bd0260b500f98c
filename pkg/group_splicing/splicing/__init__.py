from .state import (
    C_MAX_DEFAULT,
    MAX_ITERATIONS_DEFAULT,
    FitReport,
    GSplicingConfig,
    SpliceState,
)
from .gsplicing import (
    default_threshold,
    exchange_candidates,
    gsplicing_fit,
    initial_active_set,
    splice_once,
)
