import numpy as np
import pytest
from hypothesis import given, strategies as st
from loguru import logger

import group_splicing.linalg_core as src
from group_splicing.design import preprocess
from group_splicing.errors import ShapeError, SingularSupportError, SupportTooLargeError
from tests.testing_helpers import make_design, make_raw_problem, make_structure

logger.remove()


def test__fit_least_squares__empty_support():
    design = make_design()

    fit = src.fit_least_squares(design, set())

    assert not fit.beta.any()
    assert np.array_equal(fit.residual, design.y)
    assert fit.loss == pytest.approx(design.y @ design.y / (2 * design.n))


def test__fit_least_squares__response_in_span_has_zero_loss():
    X, _, structure = make_raw_problem(n=40, sizes=(2, 2, 1))
    y = X[:, :2] @ np.array([1.5, -2.0]) + 5.0
    design = preprocess(X, y, structure)

    fit = src.fit_least_squares(design, {0})

    assert fit.loss <= 1e-20
    assert np.abs(fit.residual).max() <= 1e-10
    assert fit.near_zero()
    assert not src.fit_least_squares(design, set()).near_zero()


def test__fit_least_squares__matches_normal_equations():
    design = make_design(n=40, sizes=(1, 1, 2))
    support = {0, 2}

    fit = src.fit_least_squares(design, support)

    columns = design.structure.columns_of(support)
    block = design.X[:, columns]
    expected = np.linalg.inv(block.T @ block) @ block.T @ design.y
    assert np.allclose(fit.beta[columns], expected, atol=1e-10)
    assert not fit.beta[1]


def test__fit_least_squares__support_too_large():
    design = make_design(n=5, sizes=(2, 2, 2))

    with pytest.raises(SupportTooLargeError):
        src.fit_least_squares(design, {0, 1, 2})


def test__fit_least_squares__singular_support():
    rng = np.random.default_rng(0)
    x = rng.standard_normal(30)
    X = np.column_stack([x, x, rng.standard_normal(30)])
    design = preprocess(X, rng.standard_normal(30), make_structure((1, 1, 1)))

    with pytest.raises(SingularSupportError):
        src.fit_least_squares(design, {0, 1})


def test__fit_least_squares__group_outside_range():
    with pytest.raises(ShapeError):
        src.fit_least_squares(make_design(), {3})


def test__loss_of__zero_response():
    X, _, structure = make_raw_problem(n=20, sizes=(2, 1))
    design = preprocess(X, np.full(20, 7.0), structure)
    beta = np.array([1.0, 0.0, 2.0])

    assert src.loss_of(design, np.zeros(3)) == 0.0
    assert src.loss_of(design, beta) == pytest.approx(
        np.sum((design.X @ beta) ** 2) / 40
    )


def test__loss_of__wrong_shape():
    with pytest.raises(ShapeError):
        src.loss_of(make_design(), np.zeros(2))


def test__dual_on_inactive__full_support_has_no_correlation_left():
    design = make_design(n=40, sizes=(2, 2, 2))

    fit = src.fit_least_squares(design, {0, 1, 2})
    dual = src.dual_on_inactive(design, fit)

    assert np.abs(dual).max() <= 1e-10


def test__dual_on_inactive__empty_support_is_correlation_with_response():
    design = make_design()

    dual = src.dual_on_inactive(design, src.fit_least_squares(design, set()))

    assert np.allclose(dual, design.X.T @ design.y / design.n)


def _sacrifice_identities(design, support):
    fit = src.fit_least_squares(design, support)
    dual = src.dual_on_inactive(design, fit)
    backward = src.backward_sacrifices(design.structure, fit.beta)
    forward = src.forward_sacrifices(design.structure, dual)
    for j in range(design.num_groups):
        group = design.structure.groups[j]
        if j in fit.support:
            dropped = fit.beta.copy()
            dropped[group] = 0.0
            increase = src.loss_of(design, dropped) - fit.loss
            assert increase == pytest.approx(backward[j], rel=1e-8, abs=1e-12)
        else:
            added = fit.beta.copy()
            added[group] = dual[group]
            decrease = fit.loss - src.loss_of(design, added)
            assert decrease == pytest.approx(forward[j], rel=1e-8, abs=1e-12)


def test__sacrifices__equal_loss_changes():
    _sacrifice_identities(make_design(n=60, sizes=(2, 3, 1, 2)), {1, 3})


def test__forward_sacrifice__adding_the_dual_is_the_best_step():
    design = make_design(n=60, sizes=(2, 3, 1))
    fit = src.fit_least_squares(design, {0})
    dual = src.dual_on_inactive(design, fit)
    group = design.structure.groups[1]
    best = fit.beta.copy()
    best[group] = dual[group]

    rng = np.random.default_rng(0)
    for _ in range(20):
        other = best.copy()
        other[group] += 0.1 * rng.standard_normal(len(group))
        assert src.loss_of(design, other) >= src.loss_of(design, best)


@given(
    sizes=st.lists(st.integers(min_value=1, max_value=3), min_size=2, max_size=5),
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    data=st.data(),
)
def test__sacrifices__identities_hold_for_any_support(sizes, seed, data):
    design = make_design(n=40, sizes=tuple(sizes), seed=seed)
    support = data.draw(st.sets(st.integers(min_value=0, max_value=len(sizes) - 1)))

    _sacrifice_identities(design, support)


@given(
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    data=st.data(),
)
def test__fit_least_squares__adding_a_group_never_increases_loss(seed, data):
    design = make_design(n=40, sizes=(2, 1, 3, 2), seed=seed)
    support = data.draw(st.sets(st.integers(min_value=0, max_value=3), max_size=3))
    extra = data.draw(st.integers(min_value=0, max_value=3).filter(lambda j: j not in support))

    smaller = src.fit_least_squares(design, support)
    larger = src.fit_least_squares(design, support | {extra})

    assert larger.loss <= smaller.loss + 1e-12
