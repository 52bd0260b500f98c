import argparse
import asyncio
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from loguru import logger

from group_splicing import info_files, solver_config_mod
from group_splicing.run_config import RunConfig, resolve_run_config


@dataclass
class RunContext:
    run_config: RunConfig
    solver_config: dict
    synthetic_spec: Optional[dict] = None

    @property
    def out_dir(self) -> Path:
        return self.run_config.out_dir


async def make_run_context(args: argparse.Namespace) -> RunContext:
    config_path = getattr(args, "config", None)
    spec_path = getattr(args, "spec", None)
    solver_config, synthetic_spec = await read_core_files(
        config_path=Path(config_path) if config_path else None,
        spec_path=Path(spec_path) if spec_path else None,
    )
    run_context = RunContext(
        run_config=resolve_run_config(args, solver_config),
        solver_config=solver_config,
        synthetic_spec=synthetic_spec,
    )
    logger.info(f"Solver config is {dict(solver_config)}")
    logger.info(f"Run config is {run_context.run_config.to_dict()}")
    if synthetic_spec is not None:
        logger.info(f"Synthetic spec is {dict(synthetic_spec)}")
    return run_context


async def read_synthetic_spec(spec_path: Optional[Path]) -> Optional[dict]:
    if spec_path is None:
        return None
    return info_files.read(spec_path, missing_ok=False)


async def read_core_files(
    config_path: Optional[Path], spec_path: Optional[Path]
) -> List[Optional[dict]]:
    """Return solver_config, synthetic_spec"""
    tasks = [
        asyncio.create_task(coro)
        for coro in [
            solver_config_mod.read_solver_config(config_path),
            read_synthetic_spec(spec_path),
        ]
    ]
    return [await task for task in tasks]
