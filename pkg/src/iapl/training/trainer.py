"""
Цикл обучения детектора: один глобальный вид на изображение, BCE классификатора
плюс вспомогательная BCE ветви подделки, шаг Adam.
"""
import csv
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
import torch
from tqdm import tqdm

from ..data import Sample
from ..detector import IAPLDetector
from ..errors import ArgumentError
from ..imaging import global_view, training_view
from .config import TrainConfig
from .losses import total_loss
from .optim import AdamState, adam_step

logger = logging.getLogger(__name__)


@dataclass
class TrainRecord:
    step: int
    l_cls: float
    l_aux: float
    total: float


@dataclass
class TrainLog:
    """Журнал шагов обучения"""
    records: List[TrainRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def append(self, record: TrainRecord) -> None:
        self.records.append(record)

    def to_csv(self, path: str) -> None:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(["step", "L_cls", "L_aux", "total"])
            for r in self.records:
                writer.writerow([r.step, repr(r.l_cls), repr(r.l_aux), repr(r.total)])


def trainable_parameters(model: IAPLDetector, freeze_backbone: bool):
    """Именованные параметры, которые получает оптимизатор"""
    frozen = set(model.backbone_names()) if freeze_backbone else set()
    return [(name, p) for name, p in model.named_parameters() if name not in frozen]


def train(model: IAPLDetector, dataset: Sequence[Sample], cfg: TrainConfig) -> TrainLog:
    """Обучает модель на месте и возвращает журнал шагов"""
    cfg.validate()
    if len(dataset) == 0:
        raise ArgumentError("training dataset is empty")

    torch.manual_seed(cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    view_size = model.encoder_cfg.view_size

    frozen = set(model.backbone_names()) if cfg.freeze_backbone else set()
    for name, p in model.named_parameters():
        p.requires_grad_(name not in frozen)
    state = AdamState(trainable_parameters(model, cfg.freeze_backbone), cfg.lr, cfg.betas, cfg.eps)
    dtype = model.encoder.cls.dtype

    log = TrainLog()
    model.train()
    step = 0
    try:
        for epoch in range(cfg.epochs):
            order = rng.permutation(len(dataset))
            batches = [order[i:i + cfg.batch] for i in range(0, len(order), cfg.batch)]
            sums = np.zeros(3)
            for indices in tqdm(batches, desc=f"epoch {epoch + 1}", disable=not cfg.progress):
                samples = [dataset[i] for i in indices]
                if cfg.flip:
                    views = [training_view(s.image, view_size, rng) for s in samples]
                else:
                    views = [global_view(s.image, view_size) for s in samples]
                labels = torch.tensor([float(s.label) for s in samples], dtype=dtype)

                out = model(model.prepare(views))
                loss = total_loss(out.logits, out.aux_logits, labels, cfg.aux_weight)
                state.zero_grad()
                loss.total.backward()
                adam_step(state)

                step += 1
                record = TrainRecord(step, loss.l_cls.item(), loss.l_aux.item(), loss.total.item())
                log.append(record)
                sums += (record.l_cls, record.l_aux, record.total)
                logger.debug("step %d: L_cls=%.6f L_aux=%.6f total=%.6f",
                             step, record.l_cls, record.l_aux, record.total)
            mean = sums / max(1, len(batches))
            logger.info("epoch %d/%d: L_cls=%.4f L_aux=%.4f total=%.4f",
                        epoch + 1, cfg.epochs, *mean)
    finally:
        for p in model.parameters():
            p.requires_grad_(True)
        model.eval()
    return log
