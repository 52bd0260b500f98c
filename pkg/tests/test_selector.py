import math
from pathlib import Path

import pandas as pd
import pytest
from loguru import logger
from testfixtures import TempDirectory

import group_splicing.selector.criteria as src
from group_splicing.errors import DomainError, FitAtSizeError, InvalidConfigError
from group_splicing.modes import Criterion, Method
from group_splicing.selector.config import SelectorConfig
from group_splicing.selector.golden import (
    GoldenSectionSearch,
    ggsplicing_fit,
    lower_probe,
    upper_probe,
)
from group_splicing.selector.path_export import PATH_COLUMNS, write_path_csv
from group_splicing.selector.sequential import sgsplicing_fit, warm_start
from group_splicing.splicing import GSplicingConfig, gsplicing_fit
from group_splicing.synthgen import generate
from tests.testing_helpers import design_of, make_design, make_illustration_spec

logger.remove()


def test__gic_of__value():
    assert src.gic_of(loss=1.0, num_predictors=3, n=100, num_groups=10) == pytest.approx(
        10.55, abs=0.01
    )


def test__gic_of__empty_support_is_log_loss():
    assert src.gic_of(loss=0.5, num_predictors=0, n=100, num_groups=10) == pytest.approx(
        100 * math.log(0.5)
    )


def test__gic_of__loss_floor():
    assert src.gic_of(
        loss=0.0, num_predictors=0, n=100, num_groups=10, loss_floor=1e-12
    ) == pytest.approx(100 * math.log(1e-12))


def test__bic_of__values():
    assert src.bic_of(loss=0.5, num_predictors=4, n=100) == pytest.approx(18.42, abs=0.01)
    assert src.bic_of(loss=0.5, num_predictors=0, n=100) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2])
def test__criteria__small_n(n):
    with pytest.raises(DomainError):
        src.gic_of(loss=1.0, num_predictors=1, n=n, num_groups=10)
    with pytest.raises(DomainError):
        src.bic_of(loss=1.0, num_predictors=1, n=n)


@pytest.mark.parametrize(
    "value, expected",
    [
        pytest.param(2.5, 3, id="half up"),
        pytest.param(-2.5, -3, id="negative half"),
        pytest.param(6.348, 6, id="down"),
        pytest.param(9.652, 10, id="up"),
    ],
)
def test__nearest_int(value, expected):
    assert src.nearest_int(value) == expected


@pytest.mark.parametrize(
    "n, p, p_min, num_groups, expected",
    [
        pytest.param(1000, 10000, 5, None, 22, id="large"),
        pytest.param(200, 600, 3, None, 10, id="illustration"),
        pytest.param(1000, 10000, 5, 10, 10, id="clamped to J"),
        pytest.param(3, 1000, 5, None, 1, id="clamped to one"),
    ],
)
def test__default_tmax(n, p, p_min, num_groups, expected):
    assert src.default_tmax(n=n, p=p, p_min=p_min, num_groups=num_groups) == expected


def test__golden_probes():
    assert lower_probe(1, 15) == 6
    assert upper_probe(1, 15) == 10


def test__selector_config__rejects_t_max_above_J():
    with pytest.raises(InvalidConfigError):
        SelectorConfig(t_max=4).resolve(make_design(sizes=(1, 1, 1)))


def test__selector_config__fills_defaults():
    design = make_design(n=50, sizes=(1, 1, 1, 1))

    resolved = SelectorConfig().resolve(design)

    assert 1 <= resolved.t_max <= 4
    assert resolved.loss_floor > 0


class ScriptedSearch(GoldenSectionSearch):
    """Golden-section search over a criterion given as a function of T."""

    def __init__(self, criterion_of, t_min, t_max):
        self.criterion_of = criterion_of
        self.lo, self.hi = t_min, t_max
        self.evaluated = set()

    def value(self, model_size):
        self.evaluated.add(model_size)
        return self.criterion_of(model_size)


@pytest.mark.parametrize("minimum", list(range(1, 16)))
def test__golden_search__refined_terminal_finds_unimodal_minimum(minimum):
    search = ScriptedSearch(lambda t: abs(t - minimum), 1, 15)

    terminal = search.search()
    selected = search.refine(terminal)

    assert selected == minimum
    assert search.lo <= selected <= search.hi
    assert len(search.evaluated) <= 9


def test__golden_search__literal_terminal_can_miss_boundary_minimum():
    search = ScriptedSearch(lambda t: t, 1, 15)

    assert search.search() == 2
    assert search.refine(2) == 1


def test__golden_search__single_size():
    search = ScriptedSearch(lambda t: t, 4, 4)

    assert search.search() == 4
    assert search.evaluated == {4}


def test__sgsplicing_fit__path_covers_every_size():
    design = design_of(generate(make_illustration_spec(seed=0, J=30)))

    best, path = sgsplicing_fit(design, SelectorConfig(t_max=10))

    assert [record.model_size for record in path] == list(range(1, 11))
    assert best.method == Method.SGS
    assert best.model_size == min(path, key=lambda r: (r.gic, r.model_size)).model_size
    for record in path:
        assert record.gic == pytest.approx(
            src.gic_of(record.loss, record.num_predictors, design.n, design.num_groups)
        )


def test__sgsplicing_fit__recovers_illustration_truth():
    truth = generate(make_illustration_spec(seed=0, J=30))
    design = design_of(truth)

    best, _ = sgsplicing_fit(design, SelectorConfig(t_max=10))

    assert best.model_size == 5
    assert best.support == truth.true_support


def test__sgsplicing_fit__bic_selects_by_bic():
    design = design_of(generate(make_illustration_spec(seed=1, J=30)))

    best, path = sgsplicing_fit(design, SelectorConfig(t_max=8, criterion=Criterion.BIC))

    assert best.model_size == min(path, key=lambda r: (r.bic, r.model_size)).model_size


def test__sgsplicing_fit__single_size_equals_fixed_size_fit():
    design = design_of(generate(make_illustration_spec(seed=2, J=30)))

    best, path = sgsplicing_fit(design, SelectorConfig(t_min=3, t_max=3))
    fixed = gsplicing_fit(design, GSplicingConfig(model_size=3))

    assert len(path) == 1
    assert best.support == fixed.support


def test__warm_start__adds_one_group():
    design = design_of(generate(make_illustration_spec(seed=0, J=30)))
    previous = gsplicing_fit(design, GSplicingConfig(model_size=2))

    initial = warm_start(design, previous)

    assert len(initial) == 3
    assert set(previous.support) < initial


def test__sgsplicing_fit__failure_names_model_size():
    design = make_design(n=5, sizes=(2, 2, 2))

    with pytest.raises(FitAtSizeError) as error:
        sgsplicing_fit(design, SelectorConfig(t_max=3))

    assert error.value.model_size == 3
    assert error.value.exit_code == 3


def test__ggsplicing_fit__agrees_with_sequential_search():
    truth = generate(make_illustration_spec(seed=0, J=30))
    design = design_of(truth)

    best = ggsplicing_fit(design, SelectorConfig(t_max=10))

    assert best.method == Method.GGS
    assert best.support == truth.true_support
    assert len(best.path) <= math.ceil(math.log(10) / math.log(1 / 0.618)) + 3
    assert [record.model_size for record in best.path] == sorted(
        {record.model_size for record in best.path}
    )


def test__ggsplicing_fit__degenerate_range():
    design = design_of(generate(make_illustration_spec(seed=0, J=30)))

    best = ggsplicing_fit(design, SelectorConfig(t_min=4, t_max=4))

    assert best.model_size == 4
    assert len(best.path) == 1


def test__write_path_csv__one_row_per_size():
    design = design_of(generate(make_illustration_spec(seed=0, J=30)))
    best, path = sgsplicing_fit(design, SelectorConfig(t_max=3))
    labels = [f"grp{j}" for j in range(30)]

    with TempDirectory() as tmp:
        csv_path = Path(tmp.path) / "gic_path.csv"
        write_path_csv(csv_path, path, selected_size=best.model_size, group_labels=labels)
        frame = pd.read_csv(csv_path)

    assert list(frame.columns) == PATH_COLUMNS
    assert frame["T"].tolist() == [1, 2, 3]
    assert frame["selected"].sum() == 1
    assert frame.loc[frame["selected"], "T"].item() == best.model_size
    assert len(frame.loc[0, "support"].split(";")) == 1
    assert frame.loc[2, "support"].split(";")[0].startswith("grp")
