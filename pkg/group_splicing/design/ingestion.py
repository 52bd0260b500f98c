"""Reading and writing grouped designs as a pair of CSV files.

The design file is a headered numeric CSV, one column per predictor plus the
response. The group map is a headered two-column CSV: column_name, group_label."""
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from group_splicing.design.groups import GroupStructure
from group_splicing.errors import (
    InputFileError,
    ParseError,
    OverlapError,
    ResponseInGroupMapError,
    SchemaError,
    ShapeError,
    UnknownColumnError,
    UnmappedColumnError,
)

GROUP_MAP_COLUMN_FIELD = "column_name"
GROUP_MAP_LABEL_FIELD = "group_label"


@dataclass
class IngestedData:
    X_raw: np.ndarray
    y_raw: np.ndarray
    structure: GroupStructure
    column_names: List[str]
    group_labels: List[str]

    def __iter__(self):
        """Unpacks as (X_raw, y_raw, structure)."""
        return iter((self.X_raw, self.y_raw, self.structure))


def ingest_csv(
    design_path: Path, response_column: str, group_map_path: Path
) -> IngestedData:
    """Controller"""
    design = _read_csv(design_path)
    group_map = _read_csv(group_map_path)
    if list(group_map.columns) != [GROUP_MAP_COLUMN_FIELD, GROUP_MAP_LABEL_FIELD]:
        if group_map.shape[1] != 2:
            raise ParseError(
                f"Group map {group_map_path} must have exactly two columns "
                f"({GROUP_MAP_COLUMN_FIELD}, {GROUP_MAP_LABEL_FIELD}), "
                f"got {list(group_map.columns)}"
            )
        group_map.columns = [GROUP_MAP_COLUMN_FIELD, GROUP_MAP_LABEL_FIELD]

    if response_column not in design.columns:
        raise UnknownColumnError(
            f"Response column {response_column!r} is not in {design_path}"
        )

    mapping = {}
    for column, label in zip(
        group_map[GROUP_MAP_COLUMN_FIELD], group_map[GROUP_MAP_LABEL_FIELD]
    ):
        if column == response_column:
            raise ResponseInGroupMapError(
                f"Response column {response_column!r} is listed in the group map "
                f"{group_map_path}; it cannot also be a predictor"
            )
        if column not in design.columns:
            raise UnknownColumnError(
                f"Group map {group_map_path} references column {column!r}, "
                f"which is absent from {design_path}"
            )
        if column in mapping:
            raise OverlapError(
                f"Column {column!r} is listed more than once in {group_map_path}"
            )
        mapping[column] = label

    predictor_columns = [c for c in design.columns if c != response_column]
    unmapped = [c for c in predictor_columns if c not in mapping]
    if unmapped:
        raise UnmappedColumnError(
            f"Design columns missing from the group map {group_map_path}: {unmapped}"
        )

    numeric = _to_numeric(design, design_path)
    column_position = {c: i for i, c in enumerate(predictor_columns)}
    labels = sorted(set(mapping.values()))
    ordered_columns = sorted(
        predictor_columns, key=lambda c: (mapping[c], column_position[c])
    )
    sizes = [
        sum(1 for c in ordered_columns if mapping[c] == label) for label in labels
    ]
    structure = GroupStructure.contiguous(sizes)
    logger.info(
        f"Ingested {design_path}: n={numeric.shape[0]}, p={len(ordered_columns)}, "
        f"J={len(labels)}"
    )
    return IngestedData(
        X_raw=numeric[ordered_columns].to_numpy(dtype=float),
        y_raw=numeric[response_column].to_numpy(dtype=float),
        structure=structure,
        column_names=ordered_columns,
        group_labels=labels,
    )


def read_design_columns(
    design_path: Path, column_names: Sequence[str], response_column: str
):
    """Read a holdout design with the training schema. Returns (X_raw, y_raw)."""
    design = _read_csv(design_path)
    missing = [c for c in [*column_names, response_column] if c not in design.columns]
    if missing:
        raise SchemaError(f"{design_path} lacks training columns {missing}")
    numeric = _to_numeric(design, design_path)
    return (
        numeric[list(column_names)].to_numpy(dtype=float),
        numeric[response_column].to_numpy(dtype=float),
    )


def export_csv(
    design_path: Path,
    group_map_path: Path,
    X: np.ndarray,
    y: np.ndarray,
    structure: GroupStructure,
    response_column: str = "y",
    column_names: Optional[List[str]] = None,
    group_labels: Optional[List[str]] = None,
):
    """Write a design/response pair and its group map in the ingest_csv formats."""
    if X.shape != (y.shape[0], structure.p):
        raise ShapeError(f"Cannot export design of shape {X.shape} with p={structure.p}")
    if column_names is None:
        column_names = default_column_names(structure.p)
    if group_labels is None:
        group_labels = default_group_labels(structure.num_groups)

    frame = pd.DataFrame(X, columns=column_names)
    frame[response_column] = y
    design_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(design_path, index=False)

    owner = structure.group_of_column
    group_map = pd.DataFrame(
        {
            GROUP_MAP_COLUMN_FIELD: column_names,
            GROUP_MAP_LABEL_FIELD: [group_labels[owner[i]] for i in range(structure.p)],
        }
    )
    group_map_path.parent.mkdir(parents=True, exist_ok=True)
    group_map.to_csv(group_map_path, index=False)


def default_column_names(p: int) -> List[str]:
    return [f"x{i + 1}" for i in range(p)]


def default_group_labels(num_groups: int) -> List[str]:
    """g1..gJ, zero-padded so the labels sort in group order."""
    width = len(str(num_groups))
    return [f"g{j + 1:0{width}d}" for j in range(num_groups)]


def _read_csv(path: Path) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise InputFileError(f"File not found: {path}")
    try:
        return pd.read_csv(
            path, dtype=str, keep_default_na=False, skipinitialspace=True, encoding="utf-8"
        )
    except pd.errors.ParserError as e:
        raise ParseError(f"Ragged or malformed rows in {path}: {e}") from e
    except pd.errors.EmptyDataError as e:
        raise ParseError(f"{path} is empty") from e


def _to_numeric(frame: pd.DataFrame, path: Path) -> pd.DataFrame:
    numeric = {}
    for column in frame.columns:
        raw = frame[column]
        values = pd.to_numeric(raw, errors="coerce")
        bad = ~np.isfinite(values.to_numpy(dtype=float))
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            cell = raw.iloc[row]
            if not isinstance(cell, str):
                message = f"{path}: row {row + 2} has too few fields (column {column!r})"
            else:
                message = (
                    f"{path}: non-numeric or non-finite value {cell!r} at row {row + 2}, "
                    f"column {column!r}"
                )
            raise ParseError(message, row=row + 2, column=column)
        numeric[column] = values.astype(float)
    return pd.DataFrame(numeric)
