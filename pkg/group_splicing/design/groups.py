from typing import Iterable, List, Sequence, Tuple

import numpy as np
# noinspection PyPackageRequirements
from backports.cached_property import cached_property

from group_splicing.errors import (
    CoverageError,
    EmptyGroupError,
    OverlapError,
    ShapeError,
)


class GroupStructure:
    """An ordered partition of the predictor columns 0..p-1 into J groups.

    Group ids are positions in `groups`. Column indices inside each group are
    stored sorted ascending."""

    def __init__(self, groups: Sequence[Sequence[int]]):
        self.groups: Tuple[np.ndarray, ...] = tuple(
            np.array(sorted(group), dtype=np.intp) for group in groups
        )
        for group in self.groups:
            group.setflags(write=False)

    @classmethod
    def contiguous(cls, sizes: Sequence[int]) -> "GroupStructure":
        """Adjacent columns form each group: the first sizes[0] columns are group 0,
        the next sizes[1] are group 1, and so on."""
        bounds = np.cumsum([0, *sizes])
        return validate_groups(
            [range(start, stop) for start, stop in zip(bounds[:-1], bounds[1:])],
            p=int(bounds[-1]),
        )

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([len(group) for group in self.groups], dtype=np.intp)

    @property
    def p(self) -> int:
        return int(self.sizes.sum())

    @property
    def p_min(self) -> int:
        return int(self.sizes.min())

    @property
    def p_max(self) -> int:
        return int(self.sizes.max())

    @cached_property
    def group_of_column(self) -> np.ndarray:
        owner = np.empty(self.p, dtype=np.intp)
        for group_id, group in enumerate(self.groups):
            owner[group] = group_id
        return owner

    def num_predictors(self, support: Iterable[int]) -> int:
        """#{A}: the number of predictor columns inside the groups of `support`."""
        return int(sum(self.sizes[j] for j in support))

    def columns_of(self, support: Iterable[int]) -> np.ndarray:
        """Column indices of the given groups, concatenated in ascending group order."""
        ids = sorted(support)
        if not ids:
            return np.empty(0, dtype=np.intp)
        return np.concatenate([self.groups[j] for j in ids])

    def __eq__(self, other):
        if not isinstance(other, GroupStructure):
            return NotImplemented
        return len(self.groups) == len(other.groups) and all(
            np.array_equal(a, b) for a, b in zip(self.groups, other.groups)
        )

    def __repr__(self):
        return f"GroupStructure(J={self.num_groups}, p={self.p})"


def validate_groups(raw_groups: Sequence[Iterable[int]], p: int) -> GroupStructure:
    """Check that `raw_groups` partition the columns 0..p-1 and build the structure."""
    if p < 1:
        raise ShapeError(f"Number of predictors must be positive, got p={p}")
    groups: List[List[int]] = [sorted(int(i) for i in group) for group in raw_groups]
    if not groups:
        raise EmptyGroupError("At least one group is required")

    owner = {}
    for group_id, group in enumerate(groups):
        if not group:
            raise EmptyGroupError(f"Group {group_id} is empty")
        for column in group:
            if column in owner:
                raise OverlapError(
                    f"Column {column} appears in both group {owner[column]} "
                    f"and group {group_id}"
                )
            owner[column] = group_id

    missing = sorted(set(range(p)) - owner.keys())
    if missing:
        raise CoverageError(f"Columns not covered by any group: {missing[:10]}")
    extra = sorted(owner.keys() - set(range(p)))
    if extra:
        raise CoverageError(f"Groups reference columns outside 0..{p - 1}: {extra[:10]}")

    return GroupStructure(groups)
