"""Runtime scaling sweeps: vary one of J, n or K and time the fit at each point."""
from dataclasses import dataclass, replace
from typing import List

import pandas as pd
from loguru import logger
from parse import parse

from group_splicing.errors import InvalidConfigError
from group_splicing.experiments.simulate import run_replicates
from group_splicing.modes import ScalingComponent
from group_splicing.run_config import RunConfig
from group_splicing.synthgen import SyntheticSpec

VARY_FORMAT = "{component}={start:d}:{stop:d}:{step:d}"
SCALING_COLUMNS = [
    "component",
    "value",
    "replications",
    "succeeded",
    "median_runtime_seconds",
    "mean_model_size",
]
SCALING_RUN_COLUMNS = ["component", "value", "replicate", "status", "model_size", "runtime_seconds"]
SPEC_FIELD_OF_COMPONENT = {
    ScalingComponent.NUM_GROUPS: "J",
    ScalingComponent.SAMPLE_SIZE: "n",
    ScalingComponent.GROUP_SIZE: "K",
}


@dataclass(frozen=True)
class Sweep:
    component: ScalingComponent
    values: List[int]


def parse_sweep(declaration: str) -> Sweep:
    """COMPONENT=START:STOP:STEP with STOP included, e.g. J=700:1000:30."""
    parsed = parse(VARY_FORMAT, declaration.replace(" ", ""))
    if parsed is None:
        raise InvalidConfigError(
            f"Could not parse sweep {declaration!r}; expected COMPONENT=START:STOP:STEP"
        )
    try:
        component = ScalingComponent(parsed["component"])
    except ValueError:
        raise InvalidConfigError(
            f"Unknown sweep component {parsed['component']!r}; "
            f"valid: {[c.value for c in ScalingComponent]}"
        )
    start, stop, step = parsed["start"], parsed["stop"], parsed["step"]
    if step < 1 or start < 1 or stop < start:
        raise InvalidConfigError(
            f"Sweep {declaration!r} needs 1 <= START <= STOP and STEP >= 1"
        )
    return Sweep(component=component, values=list(range(start, stop + 1, step)))


def run_scaling_study(spec: SyntheticSpec, sweeps: List[Sweep], run_config: RunConfig):
    """Controller. Returns (per-point summary, per-replicate runs)."""
    if not sweeps:
        raise InvalidConfigError("bench requires at least one --vary sweep")
    points = []
    runs = []
    for sweep in sweeps:
        field = SPEC_FIELD_OF_COMPONENT[sweep.component]
        for value in sweep.values:
            point_spec = replace(spec, **{field: value})
            point_spec.validate()
            outcomes = run_replicates(point_spec, run_config)
            frame = pd.DataFrame([outcome.row for outcome in outcomes])
            succeeded = frame[frame["status"] == "ok"]
            points.append(
                {
                    "component": sweep.component.value,
                    "value": value,
                    "replications": len(frame),
                    "succeeded": len(succeeded),
                    "median_runtime_seconds": (
                        float(succeeded["runtime_seconds"].median()) if len(succeeded) else None
                    ),
                    "mean_model_size": (
                        float(succeeded["model_size"].mean()) if len(succeeded) else None
                    ),
                }
            )
            for row in frame.to_dict(orient="records"):
                runs.append(
                    {
                        "component": sweep.component.value,
                        "value": value,
                        "replicate": row["replicate"],
                        "status": row["status"],
                        "model_size": row["model_size"],
                        "runtime_seconds": row["runtime_seconds"],
                    }
                )
            logger.info(
                f"Scaling {sweep.component.value}={value}: median runtime "
                f"{points[-1]['median_runtime_seconds']}"
            )
    return (
        pd.DataFrame(points, columns=SCALING_COLUMNS),
        pd.DataFrame(runs, columns=SCALING_RUN_COLUMNS),
    )
