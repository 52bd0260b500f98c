"""Selection and estimation quality of a fit against a known truth."""
import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from group_splicing.errors import SchemaError, ShapeError, ZeroTruthError
from group_splicing.splicing.state import FitReport

METRIC_FIELDS = ["tp", "fp", "tn", "fn", "tpr", "fpr", "mcc", "gse", "reee", "pe"]


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class MetricsRecord:
    tp: int
    fp: int
    tn: int
    fn: int
    tpr: Optional[float]
    fpr: Optional[float]
    mcc: float
    gse: int
    reee: Optional[float]
    pe: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def confusion_of(selected: Iterable[int], truth: Iterable[int], num_groups: int) -> Confusion:
    selected, truth = set(selected), set(truth)
    universe = set(range(num_groups))
    if not selected <= universe or not truth <= universe:
        raise ShapeError(
            f"Group sets {sorted(selected)} / {sorted(truth)} are not subsets of "
            f"0..{num_groups - 1}"
        )
    tp = len(selected & truth)
    fp = len(selected - truth)
    fn = len(truth - selected)
    return Confusion(tp=tp, fp=fp, tn=num_groups - tp - fp - fn, fn=fn)


def rates_of(counts: Confusion) -> Tuple[Optional[float], Optional[float], float]:
    """(TPR, FPR, MCC). A rate with an empty denominator is None; MCC is 0 when
    any factor under its square root is 0."""
    tp, fp, tn, fn = counts.tp, counts.fp, counts.tn, counts.fn
    tpr = tp / (tp + fn) if tp + fn else None
    fpr = fp / (fp + tn) if fp + tn else None
    denominator = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denominator == 0:
        mcc = 0.0
    else:
        mcc = (tp * tn - fp * fn) / math.sqrt(denominator)
    return tpr, fpr, mcc


def gse_of(selected: Iterable[int], truth: Iterable[int]) -> int:
    return len(set(selected)) - len(set(truth))


def reee_of(beta_hat: np.ndarray, beta_star: np.ndarray) -> float:
    """||beta_hat - beta*|| / ||beta*||, both in the original basis."""
    if beta_hat.shape != beta_star.shape:
        raise ShapeError(
            f"Coefficient shapes differ: {beta_hat.shape} vs {beta_star.shape}"
        )
    truth_norm = np.linalg.norm(beta_star)
    if truth_norm == 0:
        raise ZeroTruthError("Relative estimation error is undefined for beta* = 0")
    return float(np.linalg.norm(beta_hat - beta_star) / truth_norm)


def prediction_error(fit: FitReport, X_holdout: np.ndarray, y_holdout: np.ndarray) -> float:
    """Mean squared error of intercept + X beta_original on held-out raw rows."""
    beta_original, intercept = fit.beta_original, fit.intercept
    if X_holdout.ndim != 2 or X_holdout.shape[1] != beta_original.shape[0]:
        raise SchemaError(
            f"Holdout design has shape {X_holdout.shape}; expected "
            f"{beta_original.shape[0]} columns"
        )
    if y_holdout.shape != (X_holdout.shape[0],):
        raise ShapeError(
            f"Holdout response has shape {y_holdout.shape}; expected ({X_holdout.shape[0]},)"
        )
    residual = y_holdout - intercept - X_holdout @ beta_original
    return float(np.mean(residual ** 2))


def evaluate(
    fit: FitReport,
    truth: Iterable[int],
    num_groups: int,
    beta_star: np.ndarray,
    X_holdout: Optional[np.ndarray] = None,
    y_holdout: Optional[np.ndarray] = None,
) -> MetricsRecord:
    """Controller"""
    selected, truth = set(fit.support), set(truth)
    counts = confusion_of(selected, truth, num_groups)
    tpr, fpr, mcc = rates_of(counts)
    reee = reee_of(fit.beta_original, beta_star) if np.any(beta_star) else None
    pe = None
    if X_holdout is not None and y_holdout is not None:
        pe = prediction_error(fit, X_holdout, y_holdout)
    return MetricsRecord(
        tp=counts.tp,
        fp=counts.fp,
        tn=counts.tn,
        fn=counts.fn,
        tpr=tpr,
        fpr=fpr,
        mcc=mcc,
        gse=gse_of(selected, truth),
        reee=reee,
        pe=pe,
    )


def summarize(rows: pd.DataFrame, columns: Optional[List[str]] = None) -> Dict[str, dict]:
    """Mean and sample sd per column, skipping missing values."""
    if columns is None:
        columns = [c for c in rows.columns if pd.api.types.is_numeric_dtype(rows[c])]
    summary = {}
    for column in columns:
        values = pd.to_numeric(rows[column], errors="coerce").dropna()
        summary[column] = {
            "mean": _finite_or_none(values.mean()) if len(values) else None,
            "sd": _finite_or_none(values.std(ddof=1)) if len(values) > 1 else None,
            "count": int(len(values)),
        }
    return summary


def _finite_or_none(value) -> Optional[float]:
    value = float(value)
    return value if math.isfinite(value) else None
