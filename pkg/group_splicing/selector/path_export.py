from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from group_splicing.selector.criteria import CriterionRecord

PATH_COLUMNS = ["T", "loss", "gic", "bic", "support", "selected"]
SUPPORT_SEPARATOR = ";"


def path_frame(
    records: List[CriterionRecord],
    selected_size: int,
    group_labels: Optional[Sequence[str]] = None,
) -> pd.DataFrame:
    """One row per model size. Supports are written as ';'-joined group labels."""

    def label(group_id: int) -> str:
        return str(group_labels[group_id]) if group_labels is not None else str(group_id)

    rows = [
        {
            "T": record.model_size,
            "loss": record.loss,
            "gic": record.gic,
            "bic": record.bic,
            "support": SUPPORT_SEPARATOR.join(label(j) for j in record.support),
            "selected": record.model_size == selected_size,
        }
        for record in sorted(records, key=lambda r: r.model_size)
    ]
    return pd.DataFrame(rows, columns=PATH_COLUMNS)


def write_path_csv(
    path: Path,
    records: List[CriterionRecord],
    selected_size: int,
    group_labels: Optional[Sequence[str]] = None,
):
    path.parent.mkdir(parents=True, exist_ok=True)
    path_frame(records, selected_size, group_labels).to_csv(
        path, index=False, float_format="%.12g"
    )
