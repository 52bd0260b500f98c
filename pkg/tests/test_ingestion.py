from pathlib import Path

import numpy as np
import pytest
from loguru import logger
from testfixtures import TempDirectory

import group_splicing.design.ingestion as src
from group_splicing.design import GroupStructure
from group_splicing.errors import (
    InputFileError,
    ParseError,
    ResponseInGroupMapError,
    SchemaError,
    UnknownColumnError,
    UnmappedColumnError,
)
from tests.testing_helpers import write_text

logger.remove()

DESIGN = "a,b,c,y\n1,2,3,10\n4,5,6,11\n7,8,10,12\n"
GROUP_MAP = "column_name,group_label\na,g1\nb,g1\nc,g2\n"


def test__ingest_csv__builds_groups_from_labels():
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", DESIGN)
        group_map_path = write_text(tmp, "groups.csv", GROUP_MAP)

        ingested = src.ingest_csv(design_path, "y", group_map_path)

    assert ingested.structure.num_groups == 2
    assert ingested.structure.p == 3
    assert ingested.column_names == ["a", "b", "c"]
    assert ingested.group_labels == ["g1", "g2"]
    assert ingested.y_raw.tolist() == [10.0, 11.0, 12.0]
    assert ingested.X_raw[:, 2].tolist() == [3.0, 6.0, 10.0]


def test__ingest_csv__orders_columns_by_label_then_position():
    group_map = "column_name,group_label\na,g2\nb,g1\nc,g2\n"
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", DESIGN)
        group_map_path = write_text(tmp, "groups.csv", group_map)

        X, y, structure = src.ingest_csv(design_path, "y", group_map_path)
        ingested = src.ingest_csv(design_path, "y", group_map_path)

    assert ingested.column_names == ["b", "a", "c"]
    assert structure == GroupStructure.contiguous([1, 2])
    assert X[:, 0].tolist() == [2.0, 5.0, 8.0]


@pytest.mark.parametrize(
    "design, group_map, error",
    [
        pytest.param(
            DESIGN,
            GROUP_MAP + "y,g3\n",
            ResponseInGroupMapError,
            id="response in group map",
        ),
        pytest.param(
            DESIGN,
            GROUP_MAP + "d,g3\n",
            UnknownColumnError,
            id="unknown column",
        ),
        pytest.param(
            DESIGN,
            "column_name,group_label\na,g1\nb,g1\n",
            UnmappedColumnError,
            id="unmapped column",
        ),
        pytest.param(
            "a,b,c,z\n1,2,3,4\n",
            GROUP_MAP,
            UnknownColumnError,
            id="response absent",
        ),
    ],
)
def test__ingest_csv__schema_errors(design, group_map, error):
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", design)
        group_map_path = write_text(tmp, "groups.csv", group_map)

        with pytest.raises(error):
            src.ingest_csv(design_path, "y", group_map_path)


def test__ingest_csv__non_numeric_cell_reports_row_and_column():
    design = "a,b,c,y\n1,2,3,4\n5,x,7,8\n"
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", design)
        group_map_path = write_text(tmp, "groups.csv", GROUP_MAP)

        with pytest.raises(ParseError) as error:
            src.ingest_csv(design_path, "y", group_map_path)

    assert error.value.row == 3
    assert error.value.column == "b"
    assert "'x'" in str(error.value)


@pytest.mark.parametrize("cell", ["inf", "-inf", "Infinity", "nan"])
def test__ingest_csv__non_finite_cell_reports_row_and_column(cell):
    design = f"a,b,c,y\n1,2,3,4\n5,6,{cell},8\n"
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", design)
        group_map_path = write_text(tmp, "groups.csv", GROUP_MAP)

        with pytest.raises(ParseError) as error:
            src.ingest_csv(design_path, "y", group_map_path)

    assert error.value.row == 3
    assert error.value.column == "c"
    assert repr(cell) in str(error.value)


def test__read_design_columns__non_finite_response():
    design = "a,b,c,y\n1,2,3,4\n5,6,7,inf\n"
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", design)

        with pytest.raises(ParseError) as error:
            src.read_design_columns(design_path, ["a", "b", "c"], "y")

    assert (error.value.row, error.value.column) == (3, "y")


def test__ingest_csv__short_row():
    design = "a,b,c,y\n1,2,3,4\n5,6,7\n"
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", design)
        group_map_path = write_text(tmp, "groups.csv", GROUP_MAP)

        with pytest.raises(ParseError) as error:
            src.ingest_csv(design_path, "y", group_map_path)

    assert error.value.row == 3


def test__ingest_csv__missing_file_names_path():
    with TempDirectory() as tmp:
        design_path = write_text(tmp, "data.csv", DESIGN)
        missing = Path(tmp.path) / "nope.csv"

        with pytest.raises(InputFileError) as error:
            src.ingest_csv(design_path, "y", missing)

    assert "nope.csv" in str(error.value)


def test__export_csv__is_read_back_by_ingest_csv():
    rng = np.random.default_rng(0)
    structure = GroupStructure.contiguous([2, 1])
    X = rng.standard_normal((6, 3))
    y = rng.standard_normal(6)
    with TempDirectory() as tmp:
        design_path = Path(tmp.path) / "out" / "data.csv"
        group_map_path = Path(tmp.path) / "out" / "groups.csv"
        src.export_csv(design_path, group_map_path, X, y, structure)

        ingested = src.ingest_csv(design_path, "y", group_map_path)

    assert ingested.structure == structure
    assert ingested.group_labels == ["g1", "g2"]
    assert np.allclose(ingested.X_raw, X)
    assert np.allclose(ingested.y_raw, y)


def test__read_design_columns__missing_training_column():
    with TempDirectory() as tmp:
        holdout_path = write_text(tmp, "holdout.csv", "a,b,y\n1,2,3\n")

        with pytest.raises(SchemaError):
            src.read_design_columns(holdout_path, ["a", "b", "c"], "y")


@pytest.mark.parametrize(
    "num_groups, expected",
    [
        pytest.param(3, ["g1", "g2", "g3"], id="single digit"),
        pytest.param(12, ["g01", "g02"], id="two digits"),
    ],
)
def test__default_group_labels(num_groups, expected):
    labels = src.default_group_labels(num_groups)

    assert labels[: len(expected)] == expected
    assert labels == sorted(labels)
