from dataclasses import replace

import numpy as np
import pytest
from loguru import logger

import group_splicing.synthgen as src
from group_splicing.errors import CholeskyError, InvalidConfigError
from group_splicing.modes import CorrelationStructure
from tests.testing_helpers import make_spec

logger.remove()


def test__stream__reproducible_and_independent():
    first = src.stream(7, "noise", replicate=3).standard_normal(5)
    again = src.stream(7, "noise", replicate=3).standard_normal(5)
    other_name = src.stream(7, "gamma", replicate=3).standard_normal(5)
    other_replicate = src.stream(7, "noise", replicate=4).standard_normal(5)

    assert np.array_equal(first, again)
    assert not np.array_equal(first, other_name)
    assert not np.array_equal(first, other_replicate)


@pytest.mark.parametrize(
    "structure, rho, expected",
    [
        pytest.param(
            CorrelationStructure.EXPONENTIAL,
            0.5,
            [[1, 0.5, 0.25], [0.5, 1, 0.5], [0.25, 0.5, 1]],
            id="exponential",
        ),
        pytest.param(
            CorrelationStructure.CONSTANT,
            0.6,
            [[1, 0.6, 0.6], [0.6, 1, 0.6], [0.6, 0.6, 1]],
            id="constant",
        ),
        pytest.param(CorrelationStructure.EXPONENTIAL, 0.0, np.eye(3), id="rho zero"),
        pytest.param(CorrelationStructure.IID, 0.9, np.eye(3), id="iid"),
    ],
)
def test__latent_covariance(structure, rho, expected):
    spec = make_spec(J=3, structure=structure, rho=rho)

    assert np.allclose(src.latent_covariance(spec), expected)


@pytest.mark.parametrize(
    "structure", [CorrelationStructure.CONSTANT, CorrelationStructure.EXPONENTIAL]
)
def test__gen_latent__singular_covariance(structure):
    spec = make_spec(J=3, structure=structure, rho=1.0)

    with pytest.raises(CholeskyError):
        src.gen_latent(spec)


def test__gen_latent__exponential_correlation():
    spec = make_spec(J=3, rho=0.9)

    latent = src.gen_latent(spec, n=100_000)

    correlation = np.corrcoef(latent, rowvar=False)
    assert correlation[0, 2] == pytest.approx(0.81, abs=0.02)
    assert correlation[0, 1] == pytest.approx(0.9, abs=0.02)


def test__gen_design__within_group_moments():
    spec = make_spec(n=100_000, J=2, K=2, rho=0.0)

    X = src.gen_design(spec, src.gen_latent(spec))

    assert np.allclose(X.var(axis=0), 1.0, atol=0.02)
    correlation = np.corrcoef(X, rowvar=False)
    assert correlation[0, 1] == pytest.approx(0.5, abs=0.02)
    assert correlation[0, 2] == pytest.approx(0.0, abs=0.02)


def test__gen_beta__support_and_zeros():
    spec = make_spec(J=10, K=3, s_star=4)

    support, beta = src.gen_beta(spec)

    assert len(support) == 4
    assert list(support) == sorted(support)
    nonzero_groups = {int(i) // 3 for i in np.flatnonzero(beta)}
    assert nonzero_groups <= set(support)
    assert np.array_equal(src.gen_beta(spec)[1], beta)


def test__gen_beta__explicit_support_and_fixed_coefficient():
    spec = make_spec(J=5, K=2, s_star=2, true_support=(1, 4), fixed_coefficient=2.0)

    support, beta = src.gen_beta(spec)

    assert support == (1, 4)
    assert beta.tolist() == [0, 0, 2, 2, 0, 0, 0, 0, 2, 2]


def test__gen_response__noiseless_is_exact():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((20, 4))
    beta = np.array([1.0, 0, -2.0, 0])

    y = src.gen_response(X, beta, sigma1=0.0, rng=rng)

    assert np.array_equal(y, X @ beta)


def test__gen_response__noise_scale():
    X = np.zeros((100_000, 2))

    y = src.gen_response(X, np.zeros(2), sigma1=2.0, rng=np.random.default_rng(1))

    assert y.std(ddof=1) == pytest.approx(2.0, rel=0.02)


def test__generate__noise_level_does_not_move_design():
    spec = make_spec()

    quiet = src.generate(spec)
    loud = src.generate(replace(spec, sigma1=5.0))

    assert np.array_equal(quiet.design_raw, loud.design_raw)
    assert quiet.true_support == loud.true_support
    assert not np.array_equal(quiet.response, loud.response)


def test__generate__replicates_differ_and_repeat():
    spec = make_spec()

    first = src.generate(spec, replicate=0)
    second = src.generate(spec, replicate=1)

    assert not np.array_equal(first.design_raw, second.design_raw)
    assert np.array_equal(src.generate(spec, replicate=1).response, second.response)
    assert second.replicate == 1


def test__generate__holdout_rows():
    truth = src.generate(make_spec(n_test=30))

    assert truth.X_test.shape == (30, truth.structure.p)
    assert truth.y_test.shape == (30,)
    assert src.generate(make_spec()).X_test is None


def test__synthetic_spec__from_dict_reads_one_based_support():
    document = make_spec().to_dict()
    document["true_support"] = [3, 1]

    spec = src.SyntheticSpec.from_dict(document)

    assert spec.true_support == (0, 2)
    assert spec.to_dict()["true_support"] == [1, 3]
    assert spec.structure == CorrelationStructure.EXPONENTIAL


@pytest.mark.parametrize(
    "change",
    [
        pytest.param({"structure": "toeplitz"}, id="unknown structure"),
        pytest.param({"colour": "red"}, id="unknown key"),
        pytest.param({"rho": 1.5}, id="rho above one"),
        pytest.param({"s_star": 7}, id="too many true groups"),
        pytest.param({"true_support": [1, 9]}, id="support out of range"),
        pytest.param({"true_support": [1]}, id="support of wrong length"),
        pytest.param({"seed": -1}, id="negative seed"),
    ],
)
def test__synthetic_spec__from_dict_invalid(change):
    document = {**make_spec().to_dict(), **change}

    with pytest.raises(InvalidConfigError):
        src.SyntheticSpec.from_dict(document)


def test__synthetic_spec__from_dict_missing_key():
    document = make_spec().to_dict()
    del document["sigma1"]

    with pytest.raises(InvalidConfigError):
        src.SyntheticSpec.from_dict(document)
