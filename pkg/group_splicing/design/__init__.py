from .groups import GroupStructure, validate_groups
from .preprocessing import GroupedDesign, preprocess
from .ingestion import (
    IngestedData,
    default_column_names,
    default_group_labels,
    export_csv,
    ingest_csv,
    read_design_columns,
)
