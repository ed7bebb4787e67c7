"""
Метрики бинарной классификации: точность при пороге 0.5 и средняя точность (AP).
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np

from ..data import REAL
from ..errors import ArgumentError, MetricError


def _arrays(scores: Sequence[float], labels: Sequence[int]):
    scores = np.asarray(scores, dtype=np.float64).reshape(-1)
    labels = np.asarray(labels).reshape(-1)
    if scores.shape != labels.shape:
        raise ArgumentError(f"{scores.size} scores for {labels.size} labels")
    if scores.size == 0:
        raise ArgumentError("metrics need at least one sample")
    return scores, labels


def accuracy(probs: Sequence[float], labels: Sequence[int], threshold: float = 0.5) -> float:
    """Доля совпадений [prob >= threshold] с меткой"""
    probs, labels = _arrays(probs, labels)
    return float(np.mean((probs >= threshold).astype(int) == labels))


def average_precision(scores: Sequence[float], labels: Sequence[int]) -> float:
    """Среднее precision@rank по позитивам в порядке убывания оценки; равенства - в исходном порядке"""
    scores, labels = _arrays(scores, labels)
    positives = int(np.sum(labels == 1))
    if positives == 0:
        raise MetricError("average precision is undefined without positive labels")
    order = np.argsort(-scores, kind="stable")
    hits = (labels[order] == 1)
    ranks = np.arange(1, hits.size + 1)
    precision = np.cumsum(hits) / ranks
    return float(precision[hits].sum() / positives)


@dataclass
class FamilyMetrics:
    acc: float
    ap: Optional[float]
    count: int


@dataclass
class MetricsReport:
    """Микро- и макро-метрики, разбивка по семействам и метаданные прогона"""
    acc: float
    ap: Optional[float]
    m_acc: Optional[float]
    m_ap: Optional[float]
    real_acc: Optional[float]
    fake_acc: Optional[float]
    per_family: Dict[str, FamilyMetrics] = field(default_factory=dict)
    n_samples: int = 0
    config: Dict[str, object] = field(default_factory=dict)
    seed: int = 0
    wall_time: float = 0.0


def _ap_or_none(scores, labels) -> Optional[float]:
    return average_precision(scores, labels) if np.any(np.asarray(labels) == 1) else None


def summarize(probs: Sequence[float], labels: Sequence[int], families: Sequence[str],
              config: Optional[Dict[str, object]] = None, seed: int = 0, wall_time: float = 0.0) -> MetricsReport:
    """Сводит предсказания в отчет; каждое семейство подделок оценивается вместе с общим набором настоящих"""
    probs, labels = _arrays(probs, labels)
    families = np.asarray(list(families))
    if families.shape != labels.shape:
        raise ArgumentError("every sample needs a family tag")

    real_mask = labels == 0
    per_family: Dict[str, FamilyMetrics] = {}
    macro_acc, macro_ap = [], []
    for family in sorted(set(families.tolist()), key=lambda f: (f != REAL, f)):
        mask = families == family
        ap = None
        if np.any(labels[mask] == 1):
            subset = mask | real_mask
            ap = average_precision(probs[subset], labels[subset])
            macro_acc.append(accuracy(probs[subset], labels[subset]))
            macro_ap.append(ap)
        per_family[family] = FamilyMetrics(acc=accuracy(probs[mask], labels[mask]), ap=ap,
                                           count=int(mask.sum()))

    fake_mask = ~real_mask
    return MetricsReport(
        acc=accuracy(probs, labels),
        ap=_ap_or_none(probs, labels),
        m_acc=float(np.mean(macro_acc)) if macro_acc else None,
        m_ap=float(np.mean(macro_ap)) if macro_ap else None,
        real_acc=accuracy(probs[real_mask], labels[real_mask]) if real_mask.any() else None,
        fake_acc=accuracy(probs[fake_mask], labels[fake_mask]) if fake_mask.any() else None,
        per_family=per_family,
        n_samples=int(labels.size),
        config=dict(config or {}),
        seed=seed,
        wall_time=wall_time,
    )
