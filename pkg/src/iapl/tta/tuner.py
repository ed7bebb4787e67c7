"""
Адаптация токенов A на одном изображении и выбор оптимального вида.
Эпизод не меняет параметры модели: настраивается копия A со свежим состоянием Adam.
"""
import logging
from typing import Optional

import numpy as np
import torch

from ..conditioner import ConditionPair
from ..detector import IAPLDetector, ViewBatch
from ..errors import TtaError
from ..imaging import Image, generate_views
from .config import Prediction, TtaConfig
from .entropy import ENTROPIES, confidence, select_confident

logger = logging.getLogger(__name__)


def _select_conditions(cond: Optional[ConditionPair], indices) -> Optional[ConditionPair]:
    if cond is None:
        return None
    index = torch.as_tensor(list(indices), dtype=torch.long)
    return ConditionPair(cond.c_f[index], cond.c_i[index])


def optimal_view(logits, view_indices) -> int:
    """Позиция вида с наибольшей S_c; при равенстве - вид с меньшим исходным индексом"""
    scores = np.atleast_1d(confidence(np.asarray(logits, dtype=np.float64)))
    return min(range(len(view_indices)), key=lambda k: (-scores[k], view_indices[k]))


def tune_tokens(model: IAPLDetector, batch: ViewBatch, cond: Optional[ConditionPair],
                cfg: TtaConfig, adaptive_tokens: Optional[torch.Tensor] = None,
                sample_id: Optional[object] = None) -> torch.Tensor:
    """Копия A после T шагов минимизации энтропии по выбранным видам"""
    source = model.adaptive_tokens if adaptive_tokens is None else adaptive_tokens
    tokens = source.detach().clone().requires_grad_(True)
    if cfg.steps == 0:
        return tokens.detach()

    objective = ENTROPIES[cfg.loss_kind]
    optimizer = torch.optim.Adam([tokens], lr=cfg.lr)
    for _ in range(cfg.steps):
        loss = objective(model(batch, tokens, cond).logits)
        if not torch.isfinite(loss):
            raise TtaError(f"non-finite entropy while tuning sample {sample_id}", sample_id=sample_id)
        (grad,) = torch.autograd.grad(loss, tokens)
        tokens.grad = grad
        optimizer.step()
    if not torch.isfinite(tokens).all():
        raise TtaError(f"non-finite tokens after tuning sample {sample_id}", sample_id=sample_id)
    return tokens.detach()


def predict_image(model: IAPLDetector, img: Image, cfg: TtaConfig, rng: np.random.Generator,
                  sample_id: Optional[object] = None) -> Prediction:
    """Виды -> отбор уверенных -> настройка A -> повторный проход -> решение"""
    cfg.validate()
    model.eval()
    objective = ENTROPIES[cfg.loss_kind]
    views = generate_views(img, cfg.n_views, model.encoder_cfg.view_size, rng)

    with torch.no_grad():
        batch = model.prepare(views.views)
        cond = model.conditions(batch)
        logits0 = model(batch, None, cond).logits

    if cfg.conf_sel:
        selected = select_confident(logits0, cfg.m)
    else:
        selected = list(range(cfg.m))
    sub_batch = batch.select(selected)
    sub_cond = _select_conditions(cond, selected)
    loss_before = float(objective(logits0[selected]))

    has_tokens = model.encoder_cfg.prompt_mode != "none"
    tokens = model.adaptive_tokens.detach() if has_tokens else None
    tuned = False
    if cfg.enabled and has_tokens and cfg.steps > 0:
        try:
            tokens = tune_tokens(model, sub_batch, sub_cond, cfg, sample_id=sample_id)
            tuned = True
        except TtaError as e:
            logger.warning("%s; using untuned tokens", e)

    with torch.no_grad():
        logits1 = model(sub_batch, tokens, sub_cond).logits
        loss_after = float(objective(logits1))
        if cfg.ovs:
            best = optimal_view(logits1.double().numpy(), selected)
            view_index, logit = selected[best], float(logits1[best])
        else:
            view_index = 0
            global_batch = batch.select([0])
            logit = float(model(global_batch, tokens, _select_conditions(cond, [0])).logits[0])

    logger.debug("sample %s: entropy %.6f -> %.6f", sample_id, loss_before, loss_after)
    prob = float(torch.sigmoid(torch.tensor(logit, dtype=torch.float64)))
    return Prediction(logit=logit, prob=prob, confidence=float(confidence(logit)),
                      view_index=view_index, label_hat=int(prob >= 0.5),
                      loss_before=loss_before, loss_after=loss_after, tuned=tuned)
