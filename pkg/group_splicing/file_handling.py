import json
from pathlib import Path

import numpy as np
from loguru import logger


def create_file(path: Path, content: str, overwrite=False):
    """Creates or overwrites the file with the given content"""
    path.parent.mkdir(parents=True, exist_ok=True)
    if not overwrite and path.exists():
        return

    with open(path, "w+", newline="\n", encoding="utf-8") as f:
        logger.debug(f"Creating new file: {path}")
        f.write(content)


def save_json(path: Path, document: dict):
    """Keys keep insertion order so repeated runs write identical bytes."""
    create_file(
        path=path,
        content=json.dumps(document, indent=2, allow_nan=False, default=_to_native)
        + "\n",
        overwrite=True,
    )


def read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def _to_native(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")
