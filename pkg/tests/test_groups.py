import numpy as np
import pytest
from hypothesis import given, strategies as st
from loguru import logger

import group_splicing.design.groups as src
from group_splicing.errors import (
    CoverageError,
    EmptyGroupError,
    GroupStructureError,
    OverlapError,
    ShapeError,
)

logger.remove()


def test__validate_groups__partition():
    structure = src.validate_groups([[0, 1], [2]], p=3)

    assert structure.num_groups == 2
    assert structure.p == 3
    assert structure.p_min == 1
    assert structure.p_max == 2


def test__validate_groups__sorts_columns_inside_groups():
    structure = src.validate_groups([[2, 0], [1]], p=3)

    assert structure.groups[0].tolist() == [0, 2]
    assert structure.group_of_column.tolist() == [0, 1, 0]


@pytest.mark.parametrize(
    "raw_groups, p, error",
    [
        pytest.param([[0, 1], [1, 2]], 3, OverlapError, id="overlap"),
        pytest.param([[0], [1]], 3, CoverageError, id="uncovered column"),
        pytest.param([[0, 1, 2, 3]], 3, CoverageError, id="column out of range"),
        pytest.param([[0, 1, 2], []], 3, EmptyGroupError, id="empty group"),
        pytest.param([], 3, EmptyGroupError, id="no groups"),
        pytest.param([[0]], 0, ShapeError, id="no predictors"),
    ],
)
def test__validate_groups__invalid(raw_groups, p, error):
    with pytest.raises(error):
        src.validate_groups(raw_groups, p=p)


def test__validate_groups__errors_are_group_structure_errors():
    with pytest.raises(GroupStructureError):
        src.validate_groups([[0], [0]], p=1)


def test__contiguous():
    structure = src.GroupStructure.contiguous([2, 1, 3])

    assert [group.tolist() for group in structure.groups] == [[0, 1], [2], [3, 4, 5]]
    assert structure.sizes.tolist() == [2, 1, 3]


def test__num_predictors_and_columns_of():
    structure = src.GroupStructure.contiguous([2, 1, 3])

    assert structure.num_predictors({0, 2}) == 5
    assert structure.num_predictors(set()) == 0
    assert structure.columns_of({2, 0}).tolist() == [0, 1, 3, 4, 5]
    assert structure.columns_of(()).size == 0


@st.composite
def partitions(draw):
    p = draw(st.integers(min_value=1, max_value=30))
    order = draw(st.permutations(list(range(p))))
    cuts = draw(st.sets(st.integers(min_value=1, max_value=p - 1), max_size=p - 1)) if p > 1 else set()
    bounds = [0, *sorted(cuts), p]
    return p, [order[start:stop] for start, stop in zip(bounds[:-1], bounds[1:])]


@given(partitions())
def test__validate_groups__any_partition(partition):
    p, raw_groups = partition

    structure = src.validate_groups(raw_groups, p=p)

    assert structure.num_groups == len(raw_groups)
    assert int(structure.sizes.sum()) == p
    counts = np.bincount(np.concatenate(structure.groups), minlength=p)
    assert (counts == 1).all()
    for group_id, group in enumerate(structure.groups):
        assert (structure.group_of_column[group] == group_id).all()
