"""
Бинарная кросс-энтропия и суммарная функция потерь детектора.
"""
from typing import Optional, Union

import torch
import torch.nn.functional as F

from .config import LossValues

Number = Union[float, torch.Tensor]


def _as_tensor(value: Number, like: Optional[torch.Tensor] = None) -> torch.Tensor:
    if isinstance(value, torch.Tensor):
        return value
    dtype = like.dtype if like is not None else torch.float64
    return torch.as_tensor(value, dtype=dtype)


def bce_loss(logit: Number, label: Number) -> torch.Tensor:
    """Средняя BCE по логитам в устойчивой форме log-sum-exp"""
    logit = _as_tensor(logit)
    label = _as_tensor(label, logit).to(logit.dtype)
    return F.binary_cross_entropy_with_logits(logit, label.expand_as(logit))


def total_loss(cls_logit: Number, aux_logit: Optional[Number], label: Number,
               aux_weight: float = 1.0) -> LossValues:
    l_cls = bce_loss(cls_logit, label)
    if aux_logit is None:
        l_aux = torch.zeros((), dtype=l_cls.dtype)
    else:
        l_aux = bce_loss(aux_logit, label)
    return LossValues(l_cls=l_cls, l_aux=l_aux, total=l_cls + aux_weight * l_aux)
