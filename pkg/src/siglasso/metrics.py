"""Classification of 0/1 signal estimates and the accuracy measures.

Estimates within ``tau`` of 1 are signals, within ``tau`` of 0 non-signals,
and everything else is unclassified.  The adjusted Matthews coefficient
(MCCa) folds the unclassified counts into the false counts.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch, NonBinaryTruth, SpecInvalid


class Label(enum.IntEnum):
    UNCLASSIFIED = -1
    NONSIGNAL = 0
    SIGNAL = 1


def classify(beta_hat, tau: float = 0.1) -> np.ndarray:
    """Label each estimate as SIGNAL (1), NONSIGNAL (0) or UNCLASSIFIED (-1)."""
    if not 0.0 < tau < 0.5:
        raise SpecInvalid(f"tau must lie in (0, 0.5), got {tau}")
    b = np.asarray(beta_hat, dtype=np.float64)
    labels = np.full(b.shape, int(Label.UNCLASSIFIED), dtype=np.int8)
    labels[np.abs(b) <= tau] = Label.NONSIGNAL
    labels[np.abs(b - 1.0) <= tau] = Label.SIGNAL
    return labels


@dataclass(frozen=True)
class ConfusionTable:
    tp: int = 0
    fn_: int = 0
    ucp: int = 0
    fp: int = 0
    tn: int = 0
    ucn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fn_, self.ucp, self.fp, self.tn, self.ucn) < 0:
            raise SpecInvalid("confusion counts must be non-negative")

    @property
    def fna(self) -> int:
        return self.fn_ + self.ucp

    @property
    def fpa(self) -> int:
        return self.fp + self.ucn

    @property
    def positives(self) -> int:
        return self.tp + self.fn_ + self.ucp

    @property
    def negatives(self) -> int:
        return self.fp + self.tn + self.ucn

    @property
    def total(self) -> int:
        return self.positives + self.negatives

    def __add__(self, other: "ConfusionTable") -> "ConfusionTable":
        return ConfusionTable(self.tp + other.tp, self.fn_ + other.fn_,
                              self.ucp + other.ucp, self.fp + other.fp,
                              self.tn + other.tn, self.ucn + other.ucn)

    @classmethod
    def from_labels(cls, labels, truth) -> "ConfusionTable":
        labels = np.asarray(labels)
        pos = np.asarray(truth) == 1
        neg = ~pos
        return cls(
            tp=int(np.sum(pos & (labels == Label.SIGNAL))),
            fn_=int(np.sum(pos & (labels == Label.NONSIGNAL))),
            ucp=int(np.sum(pos & (labels == Label.UNCLASSIFIED))),
            fp=int(np.sum(neg & (labels == Label.SIGNAL))),
            tn=int(np.sum(neg & (labels == Label.NONSIGNAL))),
            ucn=int(np.sum(neg & (labels == Label.UNCLASSIFIED))),
        )


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0 else 0.0


def matthews(tp: int, tn: int, fp: int, fn: int) -> float:
    """Matthews correlation; 0 when any marginal is empty."""
    den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if den == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(den)


def mcc(t: ConfusionTable) -> float:
    """MCC over the classified items only."""
    return matthews(t.tp, t.tn, t.fp, t.fn_)


def mcca(t: ConfusionTable) -> float:
    """Adjusted MCC: unclassified positives/negatives count as FN/FP."""
    return matthews(t.tp, t.tn, t.fpa, t.fna)


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    ucr: float
    tpr: float
    tnr: float
    ppv: float
    mcc: float
    mcca: float
    srel: float
    srnl: float
    counts: ConfusionTable

    @classmethod
    def from_table(cls, table: ConfusionTable, sq_error: float) -> "MetricsReport":
        t = table
        p = t.total
        return cls(
            mse=_ratio(sq_error, p),
            ucr=_ratio(t.ucp + t.ucn, p),
            tpr=_ratio(t.tp, t.tp + t.fn_),
            tnr=_ratio(t.tn, t.tn + t.fp),
            ppv=_ratio(t.tp, t.tp + t.fp),
            mcc=mcc(t),
            mcca=mcca(t),
            srel=_ratio(t.tp, t.positives),
            srnl=_ratio(t.tn, t.negatives),
            counts=t,
        )

    def as_row(self) -> dict:
        row = {k: v for k, v in asdict(self).items() if k != "counts"}
        row.update(asdict(self.counts))
        return row


REPORT_FIELDS = ("mse", "ucr", "mcc", "mcca", "tpr", "tnr", "ppv", "srel",
                 "srnl", "tp", "fn_", "ucp", "fp", "tn", "ucn")


def _check(beta_hat, beta_true) -> tuple[np.ndarray, np.ndarray]:
    b = np.asarray(beta_hat, dtype=np.float64).ravel()
    t = np.asarray(beta_true).ravel()
    if b.shape != t.shape:
        raise DimensionMismatch(
            f"estimate has {b.shape[0]} entries, truth has {t.shape[0]}")
    if not np.isin(t, (0, 1)).all():
        raise NonBinaryTruth("truth entries must be 0 or 1")
    return b, t.astype(np.int8)


def confusion(beta_hat, beta_true, tau: float = 0.1) -> ConfusionTable:
    b, t = _check(beta_hat, beta_true)
    return ConfusionTable.from_labels(classify(b, tau), t)


def score(beta_hat, beta_true, tau: float = 0.1) -> MetricsReport:
    """All accuracy measures for one estimate against a 0/1 truth.

    MSE is the mean over coefficients; ratios with a zero denominator are
    reported as 0.
    """
    b, t = _check(beta_hat, beta_true)
    table = ConfusionTable.from_labels(classify(b, tau), t)
    return MetricsReport.from_table(table, float(np.sum((b - t) ** 2)))


def pooled_score(estimates, truths, tau: float = 0.1) -> MetricsReport:
    """Network-level report from per-node estimates.

    Confusion counts and squared errors are summed over the pieces, which is
    the same as scoring the concatenated coefficient vector.
    """
    table = ConfusionTable()
    sq = 0.0
    for b, t in zip(estimates, truths):
        b, t = _check(b, t)
        table = table + ConfusionTable.from_labels(classify(b, tau), t)
        sq += float(np.sum((b - t) ** 2))
    return MetricsReport.from_table(table, sq)
