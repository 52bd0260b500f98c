"""Reproducible synthetic grouped-regression data.

Each group j owns a latent normal column; its K observed columns are
(latent_j + R) / sqrt(2) with R independent standard normal, so columns of the
same group correlate at 1/2 and latents correlate through Sigma. Every kind of
draw comes from its own named sub-stream of the seed."""
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from group_splicing.design import GroupStructure, export_csv
from group_splicing.errors import CholeskyError, InvalidConfigError
from group_splicing.modes import CorrelationStructure

STREAMS = {
    "latent": 0,
    "design_noise": 1,
    "gamma": 2,
    "support": 3,
    "noise": 4,
    "holdout": 5,
    "subsample": 6,
}
SEED_LIMIT = 2 ** 64


def stream(seed: int, name: str, replicate: int = 0) -> np.random.Generator:
    """Counter-based generator for one named sub-stream of one replicate."""
    seed_sequence = np.random.SeedSequence(
        entropy=seed, spawn_key=(replicate, STREAMS[name])
    )
    return np.random.Generator(np.random.Philox(seed_sequence))


@dataclass(frozen=True)
class SyntheticSpec:
    n: int
    J: int
    K: int
    rho: float
    structure: CorrelationStructure
    sigma1: float
    s_star: int
    seed: int
    true_support: Optional[Tuple[int, ...]] = None
    fixed_coefficient: Optional[float] = None
    n_test: int = 0

    @property
    def p(self) -> int:
        return self.J * self.K

    def validate(self):
        if self.n < 2:
            raise InvalidConfigError(f"n must be at least 2, got {self.n}")
        if self.J < 1 or self.K < 1:
            raise InvalidConfigError(f"J and K must be positive, got J={self.J}, K={self.K}")
        if not 0 <= self.rho <= 1:
            raise InvalidConfigError(f"rho must lie in [0, 1], got {self.rho}")
        if not self.sigma1 >= 0:
            raise InvalidConfigError(f"sigma1 must be nonnegative, got {self.sigma1}")
        if not 0 <= self.s_star <= self.J:
            raise InvalidConfigError(
                f"s_star must lie in [0, J={self.J}], got {self.s_star}"
            )
        if not 0 <= self.seed < SEED_LIMIT:
            raise InvalidConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.n_test < 0:
            raise InvalidConfigError(f"n_test must be nonnegative, got {self.n_test}")
        if self.true_support is not None:
            support = set(self.true_support)
            if len(support) != self.s_star or len(self.true_support) != self.s_star:
                raise InvalidConfigError(
                    f"true_support {list(self.true_support)} must list s_star={self.s_star} "
                    f"distinct groups"
                )
            if any(not 0 <= j < self.J for j in support):
                raise InvalidConfigError(
                    f"true_support {list(self.true_support)} references groups outside "
                    f"1..{self.J}"
                )

    def to_dict(self) -> dict:
        """JSON document form. Group numbers in true_support are 1-based."""
        document = asdict(self)
        document["structure"] = self.structure.value
        if self.true_support is not None:
            document["true_support"] = [j + 1 for j in self.true_support]
        return document

    @classmethod
    def from_dict(cls, document: dict) -> "SyntheticSpec":
        document = dict(document)
        required = {"n", "J", "K", "rho", "structure", "sigma1", "s_star", "seed"}
        missing = required - document.keys()
        if missing:
            raise InvalidConfigError(f"Synthetic spec lacks keys {sorted(missing)}")
        unknown = document.keys() - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidConfigError(f"Synthetic spec has unknown keys {sorted(unknown)}")
        try:
            document["structure"] = CorrelationStructure(document["structure"])
        except ValueError:
            raise InvalidConfigError(
                f"Unknown correlation structure {document['structure']!r}; "
                f"valid: {[s.value for s in CorrelationStructure]}"
            )
        if document.get("true_support") is not None:
            document["true_support"] = tuple(
                sorted(int(j) - 1 for j in document["true_support"])
            )
        for key in ("n", "J", "K", "s_star", "seed", "n_test"):
            if key in document:
                document[key] = int(document[key])
        for key in ("rho", "sigma1"):
            document[key] = float(document[key])
        if document.get("fixed_coefficient") is not None:
            document["fixed_coefficient"] = float(document["fixed_coefficient"])
        spec = cls(**document)
        spec.validate()
        return spec


@dataclass(eq=False)
class GroundTruth:
    true_support: Tuple[int, ...]
    beta_star: np.ndarray
    design_raw: np.ndarray
    response: np.ndarray
    structure: GroupStructure
    replicate: int = 0
    X_test: Optional[np.ndarray] = field(default=None, repr=False)
    y_test: Optional[np.ndarray] = field(default=None, repr=False)


def latent_covariance(spec: SyntheticSpec) -> np.ndarray:
    J = spec.J
    if spec.structure == CorrelationStructure.IID:
        return np.eye(J)
    if spec.structure == CorrelationStructure.EXPONENTIAL:
        distance = np.abs(np.subtract.outer(np.arange(J), np.arange(J)))
        return np.power(spec.rho, distance).astype(float)
    sigma = np.full((J, J), float(spec.rho))
    np.fill_diagonal(sigma, 1.0)
    return sigma


def _cholesky(spec: SyntheticSpec) -> np.ndarray:
    if spec.rho == 1 and spec.J >= 2 and spec.structure != CorrelationStructure.IID:
        raise CholeskyError(
            f"{spec.structure.value} correlation with rho=1 and J={spec.J} is singular; "
            f"use rho < 1"
        )
    try:
        return scipy.linalg.cholesky(latent_covariance(spec), lower=True)
    except np.linalg.LinAlgError as e:
        raise CholeskyError(
            f"Latent covariance ({spec.structure.value}, rho={spec.rho}) is not "
            f"positive definite: {e}"
        ) from e


def gen_latent(
    spec: SyntheticSpec, rng: Optional[np.random.Generator] = None, n: Optional[int] = None
) -> np.ndarray:
    """n x J matrix whose rows are N(0, Sigma)."""
    if rng is None:
        rng = stream(spec.seed, "latent")
    n = spec.n if n is None else n
    factor = _cholesky(spec)
    return rng.standard_normal((n, spec.J)) @ factor.T


def gen_design(
    spec: SyntheticSpec, latent: np.ndarray, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """Columns (j*K .. j*K+K-1) belong to group j. The iid structure draws every
    entry independently instead."""
    if rng is None:
        rng = stream(spec.seed, "design_noise")
    n = latent.shape[0]
    noise = rng.standard_normal((n, spec.p))
    if spec.structure == CorrelationStructure.IID:
        return noise
    return (np.repeat(latent, spec.K, axis=1) + noise) / math.sqrt(2)


def gen_beta(spec: SyntheticSpec, replicate: int = 0) -> Tuple[Tuple[int, ...], np.ndarray]:
    if spec.true_support is not None:
        support = tuple(sorted(spec.true_support))
    else:
        chosen = stream(spec.seed, "support", replicate).choice(
            spec.J, size=spec.s_star, replace=False
        )
        support = tuple(sorted(int(j) for j in chosen))

    beta_star = np.zeros(spec.p)
    gamma = stream(spec.seed, "gamma", replicate).standard_normal(
        (len(support), spec.K + 1)
    )
    for row, group_id in enumerate(support):
        columns = slice(group_id * spec.K, (group_id + 1) * spec.K)
        if spec.fixed_coefficient is not None:
            beta_star[columns] = spec.fixed_coefficient
        else:
            beta_star[columns] = gamma[row, : spec.K] - gamma[row].mean()
    return support, beta_star


def gen_response(
    design_raw: np.ndarray,
    beta_star: np.ndarray,
    sigma1: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """y = X beta* + eps, eps ~ N(0, sigma1^2)."""
    return design_raw @ beta_star + sigma1 * rng.standard_normal(design_raw.shape[0])


def generate(spec: SyntheticSpec, replicate: int = 0) -> GroundTruth:
    """Controller"""
    spec.validate()
    latent = gen_latent(spec, stream(spec.seed, "latent", replicate))
    design_raw = gen_design(spec, latent, stream(spec.seed, "design_noise", replicate))
    support, beta_star = gen_beta(spec, replicate)
    response = gen_response(
        design_raw, beta_star, spec.sigma1, stream(spec.seed, "noise", replicate)
    )

    X_test = y_test = None
    if spec.n_test:
        holdout = stream(spec.seed, "holdout", replicate)
        X_test = gen_design(spec, gen_latent(spec, holdout, n=spec.n_test), holdout)
        y_test = gen_response(X_test, beta_star, spec.sigma1, holdout)

    logger.debug(
        f"Generated replicate {replicate}: n={spec.n}, J={spec.J}, K={spec.K}, "
        f"{spec.structure.value} rho={spec.rho}, support {list(support)}"
    )
    return GroundTruth(
        true_support=support,
        beta_star=beta_star,
        design_raw=design_raw,
        response=response,
        structure=GroupStructure.contiguous([spec.K] * spec.J),
        replicate=replicate,
        X_test=X_test,
        y_test=y_test,
    )


def export_ground_truth(truth: GroundTruth, design_path: Path, group_map_path: Path):
    export_csv(
        design_path,
        group_map_path,
        truth.design_raw,
        truth.response,
        truth.structure,
    )
