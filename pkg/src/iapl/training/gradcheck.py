"""
Проверка аналитических градиентов центральными конечными разностями в двойной точности.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
import torch

from ..conditioner import CilConfig
from ..detector import IAPLDetector, init_params
from ..encoder import EncoderConfig, create_tiny_config
from ..errors import ArgumentError
from ..imaging import Image
from ..tta.entropy import ENTROPIES
from .losses import total_loss

logger = logging.getLogger(__name__)

OBJECTIVES = ("total", "averaged", "pointwise")
PERTURBATION = 0.3


@dataclass
class GradCheckReport:
    """Максимальная относительная ошибка по каждому тензору"""
    errors: Dict[str, float] = field(default_factory=dict)
    eps: float = 1e-6
    n_scalars: int = 0

    @property
    def max_error(self) -> float:
        return max(self.errors.values(), default=0.0)

    def worst(self) -> str:
        return max(self.errors, key=self.errors.get)


def relative_error(analytic: torch.Tensor, numeric: torch.Tensor) -> float:
    """max|a - n| / max(max|a|, max|n|, 1e-8)"""
    scale = max(analytic.abs().max().item(), numeric.abs().max().item(), 1e-8)
    return (analytic - numeric).abs().max().item() / scale


def finite_difference_report(loss_fn: Callable[[], torch.Tensor], tensors: Dict[str, torch.Tensor],
                             eps: float = 1e-6) -> GradCheckReport:
    """Сравнивает autograd с (f(x+eps) - f(x-eps)) / 2eps поэлементно для каждого тензора"""
    if eps <= 0:
        raise ArgumentError(f"eps must be positive, got {eps}")
    names = list(tensors)
    loss = loss_fn()
    grads = torch.autograd.grad(loss, [tensors[n] for n in names], allow_unused=True)

    report = GradCheckReport(eps=eps)
    with torch.no_grad():
        for name, grad in zip(names, grads):
            t = tensors[name]
            analytic = torch.zeros_like(t) if grad is None else grad
            numeric = torch.zeros_like(t)
            flat, num_flat = t.view(-1), numeric.view(-1)
            for i in range(flat.numel()):
                original = flat[i].item()
                flat[i] = original + eps
                plus = loss_fn().item()
                flat[i] = original - eps
                minus = loss_fn().item()
                flat[i] = original
                num_flat[i] = (plus - minus) / (2.0 * eps)
            report.errors[name] = relative_error(analytic, numeric)
            report.n_scalars += t.numel()
    return report


def tiny_cil_config() -> CilConfig:
    return CilConfig(cond_patch=4, channels=(2, 2, 2, 2))


def randomize(model: IAPLDetector, seed: int, amount: float = PERTURBATION) -> None:
    """Сдвигает все параметры на U(-amount, amount), чтобы нулевые инициализации не вырождали градиенты"""
    generator = torch.Generator().manual_seed(seed + 1)
    with torch.no_grad():
        for p in model.parameters():
            p.add_(torch.rand(p.shape, generator=generator, dtype=p.dtype) * 2 * amount - amount)


def grad_check(encoder_cfg: Optional[EncoderConfig] = None, cil_cfg: Optional[CilConfig] = None,
               seed: int = 0, eps: float = 1e-6, objective: str = "total",
               n_images: int = 3) -> GradCheckReport:
    """Отчет для крошечной модели: total - по всем параметрам, энтропии - по адаптивным токенам"""
    if eps <= 0:
        raise ArgumentError(f"eps must be positive, got {eps}")
    if objective not in OBJECTIVES:
        raise ArgumentError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    encoder_cfg = encoder_cfg or create_tiny_config()
    cil_cfg = cil_cfg or tiny_cil_config()

    model = init_params(encoder_cfg, cil_cfg, seed).double()
    randomize(model, seed)
    model.eval()

    rng = np.random.default_rng(seed)
    size = encoder_cfg.view_size
    views = [Image(rng.random((size, size, 3))) for _ in range(n_images)]
    batch = model.prepare(views)
    labels = torch.tensor([float(i % 2) for i in range(n_images)], dtype=torch.float64)

    if objective == "total":
        tensors = dict(model.named_parameters())

        def loss_fn():
            out = model(batch)
            return total_loss(out.logits, out.aux_logits, labels).total
    else:
        if encoder_cfg.prompt_mode == "none":
            raise ArgumentError("entropy objectives need adaptive tokens")
        tokens = model.adaptive_tokens
        tensors = {"adaptive_tokens": tokens}
        entropy = ENTROPIES[objective]

        def loss_fn():
            return entropy(model(batch, tokens).logits)

    report = finite_difference_report(loss_fn, tensors, eps)
    logger.info("grad check (%s, %d scalars): max relative error %.3e in %s",
                objective, report.n_scalars, report.max_error, report.worst() if report.errors else "-")
    return report
