"""
Уверенность предсказания и энтропийные функции потерь по набору видов.
"""
from typing import List, Sequence, Union

import numpy as np
import torch
from scipy.special import expit

from ..errors import ArgumentError

CLAMP = 1e-12

Logits = Union[Sequence[float], np.ndarray, torch.Tensor]


def confidence(z):
    """S_c = 2 |sigmoid(z) - 0.5|"""
    if isinstance(z, torch.Tensor):
        return 2.0 * (torch.sigmoid(z) - 0.5).abs()
    value = 2.0 * np.abs(expit(np.asarray(z, dtype=np.float64)) - 0.5)
    return float(value) if np.ndim(value) == 0 else value


def select_confident(logits: Logits, m: int) -> List[int]:
    """Индексы m самых уверенных видов по убыванию S_c; при равенстве - меньший индекс"""
    if isinstance(logits, torch.Tensor):
        logits = logits.detach().cpu().numpy()
    scores = confidence(np.asarray(logits, dtype=np.float64).reshape(-1))
    scores = np.atleast_1d(scores)
    if m < 1 or m > len(scores):
        raise ArgumentError(f"cannot select {m} of {len(scores)} views")
    return [int(i) for i in np.argsort(-scores, kind="stable")[:m]]


def _as_logits(logits: Logits) -> torch.Tensor:
    z = logits if isinstance(logits, torch.Tensor) else torch.as_tensor(np.asarray(logits, dtype=np.float64))
    z = z.reshape(-1)
    if z.numel() == 0:
        raise ArgumentError("entropy of an empty logit set")
    return z


def binary_entropy(p: torch.Tensor) -> torch.Tensor:
    p = p.clamp(CLAMP, 1.0 - CLAMP)
    return -(p * p.log() + (1.0 - p) * (1.0 - p).log())


def averaged_entropy(logits: Logits) -> torch.Tensor:
    """Энтропия среднего предсказания по видам"""
    return binary_entropy(torch.sigmoid(_as_logits(logits)).mean())


def pointwise_entropy(logits: Logits) -> torch.Tensor:
    """Среднее энтропий отдельных видов"""
    return binary_entropy(torch.sigmoid(_as_logits(logits))).mean()


def consistency_gap(logits: Logits) -> torch.Tensor:
    """Неотрицательная добавка усредненной потери к поточечной"""
    return averaged_entropy(logits) - pointwise_entropy(logits)


ENTROPIES = {"averaged": averaged_entropy, "pointwise": pointwise_entropy}
